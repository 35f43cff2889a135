//! Exact arithmetic for arcs and curves on the punctured disk.

mod arrangement;
mod class;
mod config;
mod disk;
mod fingerprint;
mod phi;
mod record;
mod twist;

pub use arrangement::{complement_analysis, Complement, Component, Hole};
pub use class::{ArcClass, Class, ClassKind, Crossing, CurveClass, Half};
pub(crate) use config::{crossing_abscissa, Ratio};
pub use config::{intersection_number, Chord, ChordCrossing, Configuration, Layout, Node, PointId};
pub use disk::{Marks, PuncturedDisk};
pub use fingerprint::{Fingerprint, SecondaryFingerprint};
pub use phi::{is_sep2_vertex, phi_boundary};
pub use record::ClassRecord;
pub use twist::{parse_class, Generator, Word};

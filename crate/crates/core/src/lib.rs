pub mod ends;
pub mod error;
pub mod graphs;
pub mod metric;
pub mod planar;
pub mod suite;
pub mod unicorn;

pub use error::{Error, Result};

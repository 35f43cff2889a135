//! Symbolic end spaces: Cantor–Bendixson derivatives, characteristic systems
//! and the finite-invariance index of infinite-type surfaces.
//!
//! Countable compact spaces are described by their characteristic system
//! `(α, n)`: the `α`-th derived set is finite with `n` points. Ranks are
//! finite ordinals. `CharSpace(0, n)` is the discrete space on `n` points.

mod fii;
mod surface;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use fii::{classify_fii_zero, fii, fii_explained, FiiOutcome, FiiResult, ZeroClass};
pub use surface::{named_surface, Genus, Mark, SurfaceDescriptor, CATALOG};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndSpace {
    Empty,
    Finite(u64),
    CharSpace { rank: u32, top: u64 },
    Cantor,
    Union(Vec<EndSpace>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharSystem {
    System { alpha: u32, n: u64 },
    NotCountable,
    EmptyCase,
}

impl EndSpace {
    pub fn check(&self) -> Result<()> {
        match self {
            EndSpace::Finite(0) => Err(Error::InvalidTerm("fin(0); use empty".into())),
            EndSpace::CharSpace { top: 0, .. } => Err(Error::InvalidTerm("char space with top 0".into())),
            EndSpace::Union(parts) if parts.is_empty() => Err(Error::InvalidTerm("empty union".into())),
            EndSpace::Union(parts) => parts.iter().try_for_each(EndSpace::check),
            _ => Ok(()),
        }
    }

    /// Leaves in left-to-right order, unions flattened, empties dropped.
    pub fn leaves(&self) -> Vec<EndSpace> {
        let mut out = Vec::new();
        fn walk(e: &EndSpace, out: &mut Vec<EndSpace>) {
            match e {
                EndSpace::Empty => {}
                EndSpace::Union(parts) => parts.iter().for_each(|p| walk(p, out)),
                leaf => out.push(leaf.clone()),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn contains_cantor(&self) -> bool {
        self.leaves().iter().any(|l| matches!(l, EndSpace::Cantor))
    }

    pub fn is_infinite(&self) -> bool {
        self.leaves().iter().any(|l| matches!(l, EndSpace::Cantor | EndSpace::CharSpace { rank: 1.., .. }))
    }

    /// Number of points, when finite.
    pub fn cardinality(&self) -> Option<u64> {
        let mut total = 0;
        for l in self.leaves() {
            match l {
                EndSpace::Finite(k) | EndSpace::CharSpace { rank: 0, top: k } => total += k,
                _ => return None,
            }
        }
        Some(total)
    }

    /// Canonical term for the homeomorphism type. Countable summands merge
    /// into one: the highest rank wins and the tops at that rank add up.
    /// Cantor summands merge into one Cantor set, listed first.
    pub fn normalize(&self) -> EndSpace {
        let mut cantor = false;
        let mut best: Option<(u32, u64)> = None;
        for l in self.leaves() {
            let (rank, top) = match l {
                EndSpace::Cantor => {
                    cantor = true;
                    continue;
                }
                EndSpace::Finite(k) => (0, k),
                EndSpace::CharSpace { rank, top } => (rank, top),
                EndSpace::Empty | EndSpace::Union(_) => unreachable!("leaves are flat"),
            };
            best = match best {
                Some((r, t)) if r == rank => Some((r, t + top)),
                Some((r, t)) if r > rank => Some((r, t)),
                _ => Some((rank, top)),
            };
        }
        let countable =
            best.map(|(rank, top)| if rank == 0 { EndSpace::Finite(top) } else { EndSpace::CharSpace { rank, top } });
        match (cantor, countable) {
            (false, None) => EndSpace::Empty,
            (false, Some(c)) => c,
            (true, None) => EndSpace::Cantor,
            (true, Some(c)) => EndSpace::Union(vec![EndSpace::Cantor, c]),
        }
    }
}

/// The set of limit points, normalized.
pub fn cb_derivative(e: &EndSpace) -> EndSpace {
    let parts: Vec<EndSpace> = e
        .leaves()
        .into_iter()
        .filter_map(|l| match l {
            EndSpace::Cantor => Some(EndSpace::Cantor),
            EndSpace::CharSpace { rank: r @ 1.., top } => Some(EndSpace::CharSpace { rank: r - 1, top }),
            _ => None,
        })
        .collect();
    EndSpace::Union(parts).normalize()
}

/// The least `α` with finite `α`-th derived set, and that set's size.
pub fn characteristic_system(e: &EndSpace) -> CharSystem {
    let mut cur = e.normalize();
    if cur.contains_cantor() {
        return CharSystem::NotCountable;
    }
    if cur == EndSpace::Empty {
        return CharSystem::EmptyCase;
    }
    let mut alpha = 0;
    loop {
        if let Some(n) = cur.cardinality() {
            return CharSystem::System { alpha, n };
        }
        cur = cb_derivative(&cur);
        alpha += 1;
    }
}

impl fmt::Display for EndSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndSpace::Empty => write!(f, "empty"),
            EndSpace::Finite(k) => write!(f, "fin({k})"),
            EndSpace::CharSpace { rank, top } => write!(f, "char({rank}, {top})"),
            EndSpace::Cantor => write!(f, "cantor"),
            EndSpace::Union(parts) => {
                write!(f, "union(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for EndSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = surface::Parser::new(s);
        let e = p.term()?;
        p.end()?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(rank: u32, top: u64) -> EndSpace {
        EndSpace::CharSpace { rank, top }
    }

    /// Ordinals below ω³ as Cantor normal form coefficients (ω²·a + ω·b + c);
    /// the CB rank of a nonzero ordinal is the exponent of its last term.
    fn rank(o: (u64, u64, u64)) -> u32 {
        match o {
            (_, _, 1..) => 0,
            (_, 1.., 0) => 1,
            _ => 2,
        }
    }

    /// Characteristic system of the `d`-th derived set of `[0, ω^α·n]`,
    /// read off from top-rank points in a truncated enumeration.
    fn ordinal_oracle(alpha: u32, n: u64, d: u32) -> Option<(u32, u64)> {
        let limit = match alpha {
            0 => (0, 0, n),
            1 => (0, n, 0),
            _ => (n, 0, 0),
        };
        let mut pts = Vec::new();
        for a in 0..=3 {
            for b in 0..=6 {
                for c in 0..=6 {
                    let o = (a, b, c);
                    if o != (0, 0, 0) && o <= limit && rank(o) >= d {
                        pts.push(rank(o) - d);
                    }
                }
            }
        }
        let top = *pts.iter().max()?;
        Some((top, pts.iter().filter(|&&r| r == top).count() as u64))
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(cb_derivative(&cs(1, 1)), EndSpace::Finite(1));
        assert_eq!(cb_derivative(&EndSpace::Cantor), EndSpace::Cantor);
        assert_eq!(cb_derivative(&cs(2, 3)), cs(1, 3));
        assert_eq!(cb_derivative(&EndSpace::Finite(4)), EndSpace::Empty);
        assert_eq!(cb_derivative(&cs(0, 4)), EndSpace::Empty);
    }

    #[test]
    fn derivative_matches_ordinal_oracle() {
        for alpha in 1..=2 {
            for n in 1..=3 {
                let want = ordinal_oracle(alpha, n, 1).unwrap();
                let got = characteristic_system(&cb_derivative(&cs(alpha, n)));
                assert_eq!(got, CharSystem::System { alpha: want.0, n: want.1 }, "{alpha} {n}");
            }
        }
        assert_eq!(ordinal_oracle(2, 3, 0), Some((2, 3)));
    }

    #[test]
    fn characteristic_system_examples() {
        assert_eq!(characteristic_system(&cs(1, 1)), CharSystem::System { alpha: 1, n: 1 });
        let u = EndSpace::Union(vec![cs(2, 1), cs(1, 4)]);
        assert_eq!(characteristic_system(&u), CharSystem::System { alpha: 2, n: 1 });
        let u = EndSpace::Union(vec![EndSpace::Cantor, EndSpace::Finite(3)]);
        assert_eq!(characteristic_system(&u), CharSystem::NotCountable);
        assert_eq!(characteristic_system(&EndSpace::Empty), CharSystem::EmptyCase);
        assert_eq!(characteristic_system(&EndSpace::Finite(5)), CharSystem::System { alpha: 0, n: 5 });
    }

    #[test]
    fn normal_form_flattens_and_merges() {
        let u = EndSpace::Union(vec![
            EndSpace::Finite(2),
            EndSpace::Union(vec![cs(1, 2), EndSpace::Empty, cs(1, 1)]),
            EndSpace::Cantor,
        ]);
        assert_eq!(u.normalize(), EndSpace::Union(vec![EndSpace::Cantor, cs(1, 3)]));
        assert_eq!(cs(0, 3).normalize(), EndSpace::Finite(3));
    }

    #[test]
    fn parse_and_print() {
        let e: EndSpace = "union(cantor, fin(1), char(2, 3))".parse().unwrap();
        assert_eq!(e.to_string(), "union(cantor, fin(1), char(2, 3))");
        assert!("fin(0)".parse::<EndSpace>().is_err());
        assert!("union()".parse::<EndSpace>().is_err());
    }
}

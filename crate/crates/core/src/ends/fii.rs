use serde::{Deserialize, Serialize};

use super::surface::{named_surface, Genus, Mark, SurfaceDescriptor};
use super::{characteristic_system, CharSystem, EndSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiiResult {
    Exact(u64),
    Infinity,
    LowerBound(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiiOutcome {
    pub fii: FiiResult,
    /// Which rule of the cascade fired, 1 to 6.
    pub rule: u8,
    /// For a lower bound: the invariant collection realizing it.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroClass {
    CantorTree,
    BloomingCantorTree,
    LochNess,
    NotZero,
}

const CATALOG_VALUES: [(&str, u64); 5] = [
    ("plane_minus_cantor", 2),
    ("tripod", 3),
    ("spotted_loch_ness", 1),
    ("jacobs_ladder", 2),
    ("punctured_jacobs_ladder", 3),
];

/// Marks are all `none` or all `all`: the ends accumulated by genus are empty
/// or everything.
fn ag_trivial(s: &SurfaceDescriptor) -> bool {
    let m = s.marks();
    m.iter().all(|&x| x == Mark::None) || m.iter().all(|&x| x == Mark::All)
}

pub fn fii(s: &SurfaceDescriptor) -> Result<FiiResult> {
    Ok(fii_explained(s)?.fii)
}

/// The finite-invariance index by the first matching rule:
///
/// 1. finite positive genus: infinite;
/// 2. one end, accumulated by genus everywhere or nowhere: zero;
/// 3. countable ends, at least two, trivial marking, system `(α, n)`: `n`;
/// 4. a Cantor set of ends with trivial marking: zero;
/// 5. the catalogued surfaces: their known values;
/// 6. otherwise a lower bound with an explicit invariant collection.
pub fn fii_explained(s: &SurfaceDescriptor) -> Result<FiiOutcome> {
    if !s.is_infinite_type() {
        return Err(Error::FiniteTypeInput);
    }
    let exact = |k, rule| Ok(FiiOutcome { fii: FiiResult::Exact(k), rule, certificate: Vec::new() });
    if let Genus::Finite(g) = s.genus() {
        if g > 0 {
            return Ok(FiiOutcome { fii: FiiResult::Infinity, rule: 1, certificate: Vec::new() });
        }
    }
    let ends = s.ends().normalize();
    let trivial = ag_trivial(s);
    if trivial {
        if let CharSystem::System { n, .. } = characteristic_system(&ends) {
            if ends.cardinality() == Some(1) {
                return exact(0, 2);
            }
            return exact(n, 3);
        }
        if ends == EndSpace::Cantor {
            return exact(0, 4);
        }
    }
    let key = s.canonical_key();
    for (name, value) in CATALOG_VALUES {
        if named_surface(name)?.canonical_key() == key {
            return exact(value, 5);
        }
    }
    let certificate = invariant_collection(s);
    Ok(FiiOutcome { fii: FiiResult::LowerBound(certificate.len() as u64), rule: 6, certificate })
}

/// Pairwise disjoint closed sets permuted by every mapping class: the
/// marked and unmarked Cantor parts, and the top-rank points of the marked,
/// unmarked and top-marked countable parts. Each part is preserved since the
/// mapping class group preserves the ends accumulated by genus and the
/// Cantor–Bendixson filtration; the top-rank points of a part are permuted
/// among themselves.
fn invariant_collection(s: &SurfaceDescriptor) -> Vec<String> {
    let (_, all, none, top) = s.canonical_key();
    let mut out = Vec::new();
    for (part, label) in [(all, "marked"), (none, "unmarked")] {
        for leaf in part.leaves() {
            match leaf {
                EndSpace::Cantor => out.push(format!("the {label} Cantor part")),
                EndSpace::Finite(n) | EndSpace::CharSpace { rank: 0, top: n } => {
                    out.extend((1..=n).map(|i| format!("{label} isolated end {i}")))
                }
                EndSpace::CharSpace { rank, top: n } => {
                    out.extend((1..=n).map(|i| format!("{label} end {i} of rank {rank}")))
                }
                EndSpace::Empty | EndSpace::Union(_) => {}
            }
        }
    }
    for (rank, n) in top {
        out.extend((1..=n).map(|i| format!("marked end {i} of rank {rank} in a top-marked part")));
    }
    out
}

pub fn classify_fii_zero(s: &SurfaceDescriptor) -> Result<ZeroClass> {
    let out = fii_explained(s)?;
    if out.fii != FiiResult::Exact(0) {
        return Ok(ZeroClass::NotZero);
    }
    Ok(match (s.ends().normalize(), s.genus()) {
        (EndSpace::Cantor, Genus::Infinite) => ZeroClass::BloomingCantorTree,
        (EndSpace::Cantor, _) => ZeroClass::CantorTree,
        _ => ZeroClass::LochNess,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(text: &str) -> SurfaceDescriptor {
        text.parse().unwrap()
    }

    #[test]
    fn catalog_values() {
        let want = [
            ("cantor_tree", FiiResult::Exact(0)),
            ("blooming_cantor_tree", FiiResult::Exact(0)),
            ("loch_ness", FiiResult::Exact(0)),
            ("plane_minus_cantor", FiiResult::Exact(2)),
            ("tripod", FiiResult::Exact(3)),
            ("spotted_loch_ness", FiiResult::Exact(1)),
            ("jacobs_ladder", FiiResult::Exact(2)),
            ("punctured_jacobs_ladder", FiiResult::Exact(3)),
        ];
        for (name, v) in want {
            assert_eq!(fii(&named_surface(name).unwrap()).unwrap(), v, "{name}");
        }
    }

    #[test]
    fn countable_systems() {
        assert_eq!(fii(&desc("genus=0; ends=char(2, 4); ag=none")).unwrap(), FiiResult::Exact(4));
        assert_eq!(fii(&desc("genus=inf; ends=fin(3); ag=all")).unwrap(), FiiResult::Exact(3));
        assert_eq!(fii(&desc("genus=5; ends=cantor; ag=none")).unwrap(), FiiResult::Infinity);
        assert_eq!(fii(&desc("genus=0; ends=fin(4); ag=none")), Err(Error::FiniteTypeInput));
    }

    #[test]
    fn lower_bound_for_cantor_with_punctures() {
        let d = desc("genus=0; ends=union(cantor, fin(3)); ag=none");
        let out = fii_explained(&d).unwrap();
        assert_eq!(out.fii, FiiResult::LowerBound(4));
        assert_eq!(out.rule, 6);
        assert_eq!(out.certificate.len(), 4);
    }

    #[test]
    fn zero_classification() {
        let c = |t: &str| classify_fii_zero(&desc(t)).unwrap();
        assert_eq!(c("genus=inf; ends=fin(1); ag=all"), ZeroClass::LochNess);
        assert_eq!(c("genus=0; ends=cantor; ag=none"), ZeroClass::CantorTree);
        assert_eq!(c("genus=inf; ends=cantor; ag=all"), ZeroClass::BloomingCantorTree);
        assert_eq!(c("genus=inf; ends=fin(2); ag=all"), ZeroClass::NotZero);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_string(&FiiResult::Exact(3)).unwrap();
        assert_eq!(v, r#"{"exact":3}"#);
        assert_eq!(serde_json::to_string(&FiiResult::Infinity).unwrap(), r#""infinity""#);
    }
}

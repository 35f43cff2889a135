use serde::Serialize;

use super::{bfs_distances, REPORT_SCHEMA};
use crate::error::{Error, Result};
use crate::graphs::{distance_leq2, Distance, GraphKind, GraphModel};
use crate::planar::{phi_boundary, ArcClass, Class, PuncturedDisk};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum RetractOutcome {
    /// Smallest constants witnessed on the data.
    Constants { a: u32, b: u32 },
    /// Clause 3: `r(y) ≠ {y}`; clause 0: an image leaves `Y`. The diameter
    /// and Lipschitz clauses always hold with the reported finite constants.
    Fail { clause: u8, witness: Vec<usize> },
}

/// Checks that `r` is a quasi-retraction of `x` onto the subgraph induced on
/// `y`, measuring in the path metric of `y`. The coarse-Lipschitz clause reads
/// `d_Y(r(u), r(v))` as the diameter of `r(u) ∪ r(v)`.
pub fn quasi_retract_check<R>(x: &GraphModel, y: &[usize], r: R) -> Result<RetractOutcome>
where
    R: Fn(usize) -> Vec<usize>,
{
    let sub = x.induced(y)?;
    let mut pos = vec![None; x.len()];
    for (i, &v) in y.iter().enumerate() {
        pos[v] = Some(i);
    }
    let dy: Vec<Vec<Option<u32>>> = (0..sub.len()).map(|v| bfs_distances(&sub, v)).collect::<Result<_>>()?;
    if dy.iter().flatten().any(|d| d.is_none()) {
        return Err(Error::Disconnected);
    }
    let mut images = Vec::with_capacity(x.len());
    for v in 0..x.len() {
        let img = r(v);
        if img.is_empty() {
            return Err(Error::EmptyImage(v));
        }
        let mut local = Vec::with_capacity(img.len());
        for &w in &img {
            match pos.get(w).copied().flatten() {
                Some(i) => local.push(i),
                None => return Ok(RetractOutcome::Fail { clause: 0, witness: vec![v, w] }),
            }
        }
        images.push(local);
    }
    for &v in y {
        if images[v].len() != 1 || y[images[v][0]] != v {
            return Ok(RetractOutcome::Fail { clause: 3, witness: vec![v] });
        }
    }
    let diam = |s: &[usize], t: &[usize]| -> u32 {
        let mut m = 0;
        for &p in s.iter().chain(t) {
            for &q in s.iter().chain(t) {
                m = m.max(dy[p][q].unwrap());
            }
        }
        m
    };
    let a = images.iter().map(|s| diam(s, &[])).max().unwrap_or(0);
    let b = x.edges.iter().map(|&(u, v)| diam(&images[u], &images[v])).max().unwrap_or(0);
    Ok(RetractOutcome::Constants { a, b })
}

/// The quasi-isometry constant of the inclusion of an `(A, B)`-quasi-retract.
pub fn qi_bound_from_retract(a: u32, b: u32) -> u32 {
    2 * a + b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QIViolation {
    pub pair: usize,
    pub d_arc: Option<u8>,
    pub d_sep: Option<u8>,
    pub inequality: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QIReport {
    pub schema: u32,
    pub pairs: usize,
    /// Inequality instances verified, two per fully decided pair.
    pub checked: usize,
    /// Inequality instances the certificates cannot settle.
    pub unsettled: usize,
    /// Pairs with an undecidable distance.
    pub undecided: usize,
    pub violations: Vec<QIViolation>,
    pub multiplicative: u32,
    pub additive: u32,
}

/// Decides `(d_A(a, b), d_Sep(φa, φb))` for each pair; `None` when one of the
/// two questions is undecidable. The separating-curve graph uses the marked
/// punctures of `disk` as singleton blocks.
pub fn decide_phi_pairs(
    pairs: &[(ArcClass, ArcClass)],
    disk: &PuncturedDisk,
) -> Result<Vec<Option<(Distance, Distance)>>> {
    pairs
        .iter()
        .map(|(a, b)| {
            let da = distance_leq2(GraphKind::A2, &Class::Arc(a.clone()), &Class::Arc(b.clone()), disk)?;
            let (pa, pb) = (Class::Curve(phi_boundary(a)?), Class::Curve(phi_boundary(b)?));
            match distance_leq2(GraphKind::Sep2, &pa, &pb, disk) {
                Ok(ds) => Ok(Some((da, ds))),
                Err(Error::Undecidable(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Audits `d_A − 2 ≤ d_Sep ≤ 2·d_A` on decided pairs. A distance known only
/// to be at least 3 is used as a lower bound and nothing more.
pub fn qi_inequality_audit(decided: &[Option<(Distance, Distance)>]) -> QIReport {
    let mut rep = QIReport {
        schema: REPORT_SCHEMA,
        pairs: decided.len(),
        checked: 0,
        unsettled: 0,
        undecided: 0,
        violations: Vec::new(),
        multiplicative: 2,
        additive: 2,
    };
    for (k, d) in decided.iter().enumerate() {
        let Some((da, ds)) = d else {
            rep.undecided += 1;
            continue;
        };
        let (a, s) = (da.as_u8(), ds.as_u8());
        let mut flag = |ok: Option<bool>, which: &'static str| match ok {
            Some(true) => rep.checked += 1,
            Some(false) => rep.violations.push(QIViolation { pair: k, d_arc: a, d_sep: s, inequality: which }),
            None => rep.unsettled += 1,
        };
        // upper: d_Sep ≤ 2 d_A
        let upper = match (a, s) {
            (Some(a), Some(s)) => Some(s <= 2 * a),
            (Some(a), None) => (a < 2).then_some(false),
            (None, _) => None,
        };
        flag(upper, "upper");
        // lower: d_A − 2 ≤ d_Sep
        let lower = match (a, s) {
            (Some(a), Some(s)) => Some(a <= s + 2),
            (Some(_), None) => Some(true),
            (None, Some(0)) => Some(false),
            (None, _) => None,
        };
        flag(lower, "lower");
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::remark_graph;
    use crate::planar::Marks;

    #[test]
    fn identity_retraction() {
        let g = remark_graph(4, 3).unwrap();
        let all: Vec<usize> = (0..g.len()).collect();
        assert_eq!(quasi_retract_check(&g, &all, |v| vec![v]).unwrap(), RetractOutcome::Constants { a: 0, b: 1 });
    }

    #[test]
    fn layer_collapse_onto_spine() {
        // oracle: layers i, j map to spine vertices i, j at distance |i − j|,
        // adjacent vertices have |i − j| ≤ 1
        let (m, w) = (5, 3);
        let g = remark_graph(m, w).unwrap();
        let spine: Vec<usize> = (0..m).map(|l| l * w).collect();
        let out = quasi_retract_check(&g, &spine, |v| vec![(v / w) * w]).unwrap();
        assert_eq!(out, RetractOutcome::Constants { a: 0, b: 1 });
        let out = quasi_retract_check(&g, &spine, |v| vec![(v / w) * w, ((v / w) * w + w) % (m * w)]).unwrap();
        assert!(matches!(out, RetractOutcome::Fail { clause: 3, .. }));
    }

    #[test]
    fn moved_subgraph_vertex_fails_clause_three() {
        let g = remark_graph(3, 2).unwrap();
        let all: Vec<usize> = (0..g.len()).collect();
        let out = quasi_retract_check(&g, &all, |v| vec![if v == 2 { 3 } else { v }]).unwrap();
        assert_eq!(out, RetractOutcome::Fail { clause: 3, witness: vec![2] });
        assert_eq!(quasi_retract_check(&g, &all, |_| vec![]), Err(Error::EmptyImage(0)));
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(qi_bound_from_retract(0, 1), 1);
        assert_eq!(qi_bound_from_retract(2, 2), 6);
        assert_eq!(qi_bound_from_retract(1, 0), 2);
    }

    #[test]
    fn phi_on_disjoint_arcs() {
        let disk = PuncturedDisk::new(7, Marks::Points(vec![1, 2, 3, 4, 5])).unwrap();
        let pairs = [
            (ArcClass::over(7, 1, 2).unwrap(), ArcClass::over(7, 3, 4).unwrap()),
            (ArcClass::over(7, 1, 2).unwrap(), ArcClass::over(7, 2, 3).unwrap()),
        ];
        let dec = decide_phi_pairs(&pairs, &disk).unwrap();
        assert_eq!(dec[0], Some((Distance::One, Distance::One)));
        assert_eq!(dec[1], Some((Distance::One, Distance::Two)));
        let rep = qi_inequality_audit(&dec);
        assert!(rep.violations.is_empty());
        assert_eq!(rep.checked, 4);
    }

    #[test]
    fn audit_flags_bad_data() {
        let rep = qi_inequality_audit(&[
            Some((Distance::One, Distance::AtLeastThree)),
            Some((Distance::AtLeastThree, Distance::Zero)),
            Some((Distance::AtLeastThree, Distance::Two)),
            None,
        ]);
        assert_eq!(rep.violations.len(), 2);
        assert_eq!((rep.unsettled, rep.undecided), (3, 1));
    }
}

use std::collections::BTreeSet;

use serde::Serialize;

use super::{components, ModelMetric, REPORT_SCHEMA};
use crate::error::{Error, Result};
use crate::graphs::{farey_apply, farey_distance, GraphModel, Matrix, Slope};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    /// `d(base, gᵏ·base)` for `k = 0..=K`.
    pub distances: Vec<u32>,
    /// `d(base, g^K·base) / K`.
    pub slope: f64,
}

/// Distances from `base` along its forward orbit under `step`.
pub fn translation_growth<V, S, D>(base: &V, step: S, dist: D, k: usize) -> Result<GrowthReport>
where
    V: Clone,
    S: Fn(&V) -> Result<V>,
    D: Fn(&V, &V) -> Result<u32>,
{
    let mut distances = Vec::with_capacity(k + 1);
    let mut cur = base.clone();
    distances.push(dist(base, &cur)?);
    for _ in 0..k {
        cur = step(&cur)?;
        distances.push(dist(base, &cur)?);
    }
    let slope = if k == 0 { 0.0 } else { f64::from(distances[k]) / k as f64 };
    Ok(GrowthReport { distances, slope })
}

/// Growth of `d(base, Mᵏ·base)` in the Farey graph.
pub fn farey_translation(m: &Matrix, base: Slope, k: usize) -> Result<GrowthReport> {
    translation_growth(&base, |s| farey_apply(m, *s), |s, t| Ok(farey_distance(*s, *t)), k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossOrbit {
    pub label: String,
    /// Smallest distance between the two orbits.
    pub b: u32,
    pub bound: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifierReport {
    pub schema: u32,
    pub orbit: String,
    pub size: usize,
    /// Largest distance over in-orbit pairs satisfying `V`. This stands in
    /// for the finiteness of such pairs up to the group action.
    pub a: u32,
    pub bound: u32,
    pub observed_diameter: u32,
    pub cross: Vec<CrossOrbit>,
}

/// Finite-data certificate that the orbit labelled `orbit` has bounded
/// diameter: every in-orbit pair failing `v` must have a common `v`-partner
/// inside the orbit, and then the diameter is at most `2A`.
pub fn bounded_orbit_certify<P>(g: &GraphModel, orbit: &str, v: P) -> Result<CertifierReport>
where
    P: Fn(usize, usize) -> bool,
{
    let members = g.with_label(orbit);
    if members.is_empty() {
        return Err(Error::UnknownName(orbit.to_string()));
    }
    let metric = ModelMetric::new(g);
    let d = |x: usize, y: usize| metric.distance(x, y).ok_or(Error::Disconnected);
    let mut a = 0;
    let mut observed = 0;
    for &x in &members {
        for &y in &members {
            let dxy = d(x, y)?;
            observed = observed.max(dxy);
            if x != y && v(x, y) {
                a = a.max(dxy);
            }
        }
    }
    for &x in &members {
        for &y in &members {
            if x == y || v(x, y) {
                continue;
            }
            if !members.iter().any(|&z| v(x, z) && v(z, y)) {
                return Err(Error::Condition2Fail(x, y));
            }
        }
    }
    let labels: BTreeSet<&str> = (0..g.len()).filter_map(|u| g.label(u)).filter(|&l| l != orbit).collect();
    let mut cross = Vec::new();
    for label in labels {
        let other = g.with_label(label);
        let mut b = u32::MAX;
        for &x in &members {
            for &y in &other {
                b = b.min(d(x, y)?);
            }
        }
        cross.push(CrossOrbit { label: label.to_string(), b, bound: 2 * b + 2 * a });
    }
    Ok(CertifierReport {
        schema: REPORT_SCHEMA,
        orbit: orbit.to_string(),
        size: members.len(),
        a,
        bound: 2 * a,
        observed_diameter: observed,
        cross,
    })
}

/// Finite form of Putman's connectivity criterion: every generator image of
/// `v` lies in the component of `v`, and every component holds an orbit
/// witness.
pub fn putman_check(g: &GraphModel, v: usize, images: &[usize], witnesses: &[usize]) -> Result<bool> {
    for &u in std::iter::once(&v).chain(images).chain(witnesses) {
        if u >= g.len() {
            return Err(Error::UnknownVertex(u));
        }
    }
    let comp = components(g);
    if images.iter().any(|&s| comp[s] != comp[v]) {
        return Ok(false);
    }
    let covered: BTreeSet<usize> = witnesses.iter().map(|&w| comp[w]).collect();
    Ok(comp.iter().all(|c| covered.contains(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{remark_graph, GraphKind, Recipe, Vertex, VertexKey};
    use std::collections::BTreeMap;

    fn labelled(labels: &[&str], edges: &[(usize, usize)]) -> GraphModel {
        let vertices = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Vertex { key: VertexKey::Layer { layer: 0, index: i }, label: Some(l.to_string()) })
            .collect();
        let recipe = Recipe { builder: "test".into(), params: BTreeMap::new() };
        GraphModel::new(GraphKind::Layers, recipe, vertices, edges.to_vec(), None).unwrap()
    }

    #[test]
    fn remark_layer_certifies_with_bound_two() {
        let g = remark_graph(4, 3).unwrap();
        let rep = bounded_orbit_certify(&g, "layer1", |x, y| g.has_edge(x, y)).unwrap();
        assert_eq!((rep.a, rep.bound, rep.observed_diameter), (1, 2, 1));
        assert_eq!(rep.cross.len(), 3);
        assert!(rep.cross.iter().all(|c| c.bound >= c.b));
    }

    #[test]
    fn condition_two_violator() {
        // orbit {0, 1, 2}: 0 and 2 are joined only through the outsider 3
        let g = labelled(&["o", "o", "o", "x"], &[(0, 1), (0, 3), (3, 2)]);
        let r = bounded_orbit_certify(&g, "o", |x, y| g.has_edge(x, y));
        assert_eq!(r, Err(Error::Condition2Fail(0, 2)));
    }

    #[test]
    fn identity_growth_is_flat() {
        let r = translation_growth(&5u32, |x| Ok(*x), |a, b| Ok(a.abs_diff(*b)), 6).unwrap();
        assert_eq!(r.distances, vec![0; 7]);
    }

    #[test]
    fn anosov_growth_and_its_inverse() {
        let base = Slope::INFINITY;
        let fwd = farey_translation(&Matrix::ANOSOV, base, 8).unwrap();
        assert!(fwd.distances.windows(2).all(|w| w[0] < w[1]), "{:?}", fwd.distances);
        assert!(fwd.slope >= 0.25);
        let inv = Matrix([[1, -1], [-1, 2]]);
        let back = farey_translation(&inv, base, 8).unwrap();
        assert_eq!(back.distances, fwd.distances);
    }

    #[test]
    fn putman_cases() {
        let g = labelled(&["o", "o", "o", "o"], &[(0, 1), (1, 2)]);
        assert!(putman_check(&g, 0, &[1, 2], &[0, 3]).unwrap());
        assert!(!putman_check(&g, 0, &[1, 2], &[0]).unwrap());
        assert!(!putman_check(&g, 0, &[3], &[0, 3]).unwrap());
        assert_eq!(putman_check(&g, 9, &[], &[]), Err(Error::UnknownVertex(9)));
    }
}

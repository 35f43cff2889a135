//! Graph metrics on finite models, and the coarse-geometry criteria as
//! checkers on finite data.

mod hyperbolic;
mod orbit;
mod retract;

use std::collections::VecDeque;

use rayon::prelude::*;

pub use hyperbolic::{delta_four_point, guessing_check, GuessingReport, GuessingViolation, HyperbolicityReport};
pub use orbit::{
    bounded_orbit_certify, farey_translation, putman_check, translation_growth, CertifierReport, CrossOrbit,
    GrowthReport,
};
pub use retract::{
    decide_phi_pairs, qi_bound_from_retract, qi_inequality_audit, quasi_retract_check, QIReport, QIViolation,
    RetractOutcome,
};

use crate::error::{Error, Result};
use crate::graphs::{distance_leq2, GraphKind, GraphModel};
use crate::planar::{Class, PuncturedDisk};

pub const REPORT_SCHEMA: u32 = 1;

/// Quadruple count up to which the four-point defect is computed exhaustively.
pub const EXHAUSTIVE_QUADRUPLES: u64 = 1_000_000;

/// Shortest-path distances from `v`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &GraphModel, v: usize) -> Result<Vec<Option<u32>>> {
    if v >= g.len() {
        return Err(Error::UnknownVertex(v));
    }
    let mut dist = vec![None; g.len()];
    dist[v] = Some(0);
    let mut q = VecDeque::from([v]);
    while let Some(u) = q.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                q.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// All-pairs distance table, or `Disconnected`.
pub fn distance_matrix(g: &GraphModel) -> Result<Vec<Vec<u32>>> {
    (0..g.len())
        .into_par_iter()
        .map(|v| bfs_distances(g, v)?.into_iter().map(|d| d.ok_or(Error::Disconnected)).collect())
        .collect()
}

/// Component index of every vertex, numbered in order of first vertex.
pub fn components(g: &GraphModel) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.len()];
    let mut next = 0;
    for s in 0..g.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn is_connected(g: &GraphModel) -> bool {
    components(g).iter().all(|&c| c == 0)
}

pub fn eccentricity(g: &GraphModel, v: usize) -> Result<u32> {
    bfs_distances(g, v)?.into_iter().map(|d| d.ok_or(Error::Disconnected)).try_fold(0, |m, d| Ok(m.max(d?)))
}

pub fn diameter(g: &GraphModel) -> Result<u32> {
    (0..g.len()).into_par_iter().map(|v| eccentricity(g, v)).try_reduce(|| 0, |a, b| Ok(a.max(b)))
}

/// Diameter of a vertex subset measured in `g`.
pub fn subset_diameter(g: &GraphModel, set: &[usize]) -> Result<u32> {
    let mut best = 0;
    for &u in set {
        let d = bfs_distances(g, u)?;
        for &v in set {
            best = best.max(d[v].ok_or(Error::Disconnected)?);
        }
    }
    Ok(best)
}

/// A metric answering bounded-radius questions `d(x, y) ≤ r`.
pub trait GraphMetric {
    type Vertex: Clone + Eq;
    fn within(&self, x: &Self::Vertex, y: &Self::Vertex, r: u32) -> Result<bool>;
}

/// Path metric of a finite model, from a precomputed table.
pub struct ModelMetric {
    table: Vec<Vec<Option<u32>>>,
}

impl ModelMetric {
    pub fn new(g: &GraphModel) -> Self {
        let table = (0..g.len()).into_par_iter().map(|v| bfs_distances(g, v).unwrap()).collect();
        ModelMetric { table }
    }

    pub fn distance(&self, x: usize, y: usize) -> Option<u32> {
        self.table[x][y]
    }
}

impl GraphMetric for ModelMetric {
    type Vertex = usize;
    fn within(&self, x: &usize, y: &usize, r: u32) -> Result<bool> {
        let row = self.table.get(*x).ok_or(Error::UnknownVertex(*x))?;
        let d = row.get(*y).ok_or(Error::UnknownVertex(*y))?;
        Ok(d.is_some_and(|d| d <= r))
    }
}

/// The arc graph on arcs with distinct endpoints in the marked punctures,
/// with radii up to 2 decided exactly.
pub struct ArcMetric {
    pub disk: PuncturedDisk,
}

impl GraphMetric for ArcMetric {
    type Vertex = Class;
    fn within(&self, x: &Class, y: &Class, r: u32) -> Result<bool> {
        if r > 2 {
            return Err(Error::Undecidable(format!("radius {r} exceeds the exact range")));
        }
        let d = distance_leq2(GraphKind::A2, x, y, &self.disk)?;
        Ok(d.as_u8().is_some_and(|d| u32::from(d) <= r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::remark_graph;

    #[test]
    fn remark_corner_eccentricity() {
        let g = remark_graph(5, 3).unwrap();
        assert_eq!(eccentricity(&g, 0).unwrap(), 4);
        assert_eq!(diameter(&g).unwrap(), 4);
    }

    #[test]
    fn single_vertex_and_unreachable() {
        let g = remark_graph(1, 1).unwrap();
        assert_eq!(bfs_distances(&g, 0).unwrap(), vec![Some(0)]);
        let two = g.induced(&[0]).unwrap();
        assert_eq!(bfs_distances(&two, 0).unwrap(), vec![Some(0)]);
        assert_eq!(bfs_distances(&g, 3), Err(Error::UnknownVertex(3)));
    }

    #[test]
    fn disconnected_pair_is_unreachable() {
        let g = remark_graph(3, 1).unwrap();
        let h = g.induced(&[0, 2]).unwrap();
        assert_eq!(bfs_distances(&h, 0).unwrap(), vec![Some(0), None]);
        assert!(!is_connected(&h));
        assert_eq!(diameter(&h), Err(Error::Disconnected));
    }
}

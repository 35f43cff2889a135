use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{distance_matrix, GraphMetric, EXHAUSTIVE_QUADRUPLES, REPORT_SCHEMA};
use crate::error::{Error, Result};
use crate::graphs::GraphModel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicityReport {
    pub schema: u32,
    pub vertices: usize,
    pub quadruples: u64,
    pub exhaustive: bool,
    /// Largest four-point defect seen; always a multiple of 1/2.
    pub delta4: f64,
    pub triangles: u64,
    /// Largest distance from a point of one side of a geodesic triangle to
    /// the union of the other two.
    pub slim: u32,
    pub seed: u64,
}

/// Twice the four-point defect: the gap between the two largest pair sums.
fn defect2(d: &[Vec<u32>], x: usize, y: usize, z: usize, w: usize) -> u32 {
    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
    s.sort_unstable();
    s[2] - s[1]
}

/// Vertices of the geodesic from `x` to `y` that always steps to the
/// lowest-indexed neighbour closer to `y`.
fn geodesic(g: &GraphModel, d: &[Vec<u32>], x: usize, y: usize) -> Vec<usize> {
    let mut path = vec![x];
    let mut u = x;
    while u != y {
        u = *g.neighbors(u).iter().find(|&&w| d[w][y] + 1 == d[u][y]).expect("distance table");
        path.push(u);
    }
    path
}

fn slimness(g: &GraphModel, d: &[Vec<u32>], x: usize, y: usize, z: usize) -> u32 {
    let sides = [geodesic(g, d, x, y), geodesic(g, d, y, z), geodesic(g, d, z, x)];
    let mut worst = 0;
    for i in 0..3 {
        for &p in &sides[i] {
            let near = sides[(i + 1) % 3].iter().chain(&sides[(i + 2) % 3]).map(|&q| d[p][q]).min().unwrap_or(0);
            worst = worst.max(near);
        }
    }
    worst
}

/// Four-point defect and triangle slimness of a connected model. All
/// quadruples are scanned when there are at most 10⁶ of them; otherwise
/// `sample_size` quadruples and triangles are drawn from `seed`.
pub fn delta_four_point(g: &GraphModel, sample_size: usize, seed: u64) -> Result<HyperbolicityReport> {
    let d = distance_matrix(g)?;
    let n = g.len();
    if n == 0 {
        return Err(Error::Disconnected);
    }
    let exhaustive = (n as u64).pow(4) <= EXHAUSTIVE_QUADRUPLES;
    let (quadruples, best2) = if exhaustive {
        let best = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut b = 0;
                for y in x + 1..n {
                    for z in y + 1..n {
                        for w in z + 1..n {
                            b = b.max(defect2(&d, x, y, z, w));
                        }
                    }
                }
                b
            })
            .max()
            .unwrap_or(0);
        let n = n as u64;
        (n * n.saturating_sub(1) * n.saturating_sub(2) * n.saturating_sub(3) / 24, best)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = 0;
        for _ in 0..sample_size {
            let q: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..n));
            b = b.max(defect2(&d, q[0], q[1], q[2], q[3]));
        }
        (sample_size as u64, b)
    };
    let exhaustive_triangles = (n as u64).pow(3) <= EXHAUSTIVE_QUADRUPLES;
    let (triangles, slim) = if exhaustive_triangles {
        let s = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut b = 0;
                for y in x..n {
                    for z in y..n {
                        b = b.max(slimness(g, &d, x, y, z));
                    }
                }
                b
            })
            .max()
            .unwrap_or(0);
        let n = n as u64;
        (n * (n + 1) * (n + 2) / 6, s)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut b = 0;
        for _ in 0..sample_size {
            let t: [usize; 3] = std::array::from_fn(|_| rng.gen_range(0..n));
            b = b.max(slimness(g, &d, t[0], t[1], t[2]));
        }
        (sample_size as u64, b)
    };
    Ok(HyperbolicityReport {
        schema: REPORT_SCHEMA,
        vertices: n,
        quadruples,
        exhaustive,
        delta4: f64::from(best2) / 2.0,
        triangles,
        slim,
        seed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "clause")]
pub enum GuessingViolation {
    /// `A(x, y)` misses `x` or `y`.
    MissingEndpoint {
        pair: usize,
    },
    NotConnected {
        pair: usize,
    },
    /// `d(x, y) ≤ 1` but `A(x, y)` has diameter above `M`.
    LocalDiameter {
        pair: usize,
    },
    /// A vertex of `A(x, y)` farther than `M` from `A(x, z) ∪ A(z, y)`.
    NotSlim {
        triple: usize,
        vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuessingReport {
    pub schema: u32,
    pub m: u32,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violation: Option<GuessingViolation>,
}

impl GuessingReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the hypotheses of the guessing-geodesics criterion on sampled data:
/// each `A(x, y)` contains `x, y` and is connected, has diameter at most `m`
/// when `d(x, y) ≤ 1`, and on each triple `A(x, y)` lies in the
/// `m`-neighbourhood of `A(x, z) ∪ A(z, y)`. Pairs and triples index into
/// `vertices`; `family` returns `None` where it is undefined. Stops at the
/// first violation.
pub fn guessing_check<G, F>(
    metric: &G,
    vertices: &[G::Vertex],
    pairs: &[(usize, usize)],
    triples: &[(usize, usize, usize)],
    family: F,
    m: u32,
) -> Result<GuessingReport>
where
    G: GraphMetric,
    F: Fn(&G::Vertex, &G::Vertex) -> Option<Vec<G::Vertex>>,
{
    let fam = |i: usize, j: usize| -> Result<Vec<G::Vertex>> {
        let (x, y) = (vertices.get(i).ok_or(Error::UnknownVertex(i))?, vertices.get(j).ok_or(Error::UnknownVertex(j))?);
        family(x, y).ok_or(Error::FamilyGap(i, j))
    };
    let mut report = GuessingReport { schema: REPORT_SCHEMA, m, pairs_checked: 0, triples_checked: 0, violation: None };
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let set = fam(i, j)?;
        report.pairs_checked += 1;
        if !set.contains(&vertices[i]) || !set.contains(&vertices[j]) {
            report.violation = Some(GuessingViolation::MissingEndpoint { pair: k });
            return Ok(report);
        }
        let mut seen = vec![false; set.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for v in 0..set.len() {
                if !seen[v] && metric.within(&set[u], &set[v], 1)? {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if seen.contains(&false) {
            report.violation = Some(GuessingViolation::NotConnected { pair: k });
            return Ok(report);
        }
        if metric.within(&vertices[i], &vertices[j], 1)? {
            for u in &set {
                for v in &set {
                    if !metric.within(u, v, m)? {
                        report.violation = Some(GuessingViolation::LocalDiameter { pair: k });
                        return Ok(report);
                    }
                }
            }
        }
    }
    for (k, &(x, y, z)) in triples.iter().enumerate() {
        let side = fam(x, y)?;
        let mut rest = fam(x, z)?;
        rest.extend(fam(z, y)?);
        report.triples_checked += 1;
        for (vi, c) in side.iter().enumerate() {
            let mut near = false;
            for t in &rest {
                if metric.within(c, t, m)? {
                    near = true;
                    break;
                }
            }
            if !near {
                report.violation = Some(GuessingViolation::NotSlim { triple: k, vertex: vi });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{remark_graph, GraphKind, Recipe, Vertex, VertexKey};
    use crate::metric::ModelMetric;
    use std::collections::BTreeMap;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> GraphModel {
        let vertices = (0..n).map(|i| Vertex { key: VertexKey::Layer { layer: 0, index: i }, label: None }).collect();
        let recipe = Recipe { builder: "test".into(), params: BTreeMap::new() };
        GraphModel::new(GraphKind::Layers, recipe, vertices, edges.to_vec(), None).unwrap()
    }

    fn cycle(n: usize) -> GraphModel {
        from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn tree() -> GraphModel {
        from_edges(8, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)])
    }

    #[test]
    fn trees_and_paths_are_zero_hyperbolic() {
        assert_eq!(delta_four_point(&tree(), 0, 1).unwrap().delta4, 0.0);
        let r = delta_four_point(&remark_graph(9, 1).unwrap(), 0, 1).unwrap();
        assert!(r.exhaustive);
        assert_eq!((r.delta4, r.slim), (0.0, 0));
    }

    #[test]
    fn cycle_of_twelve() {
        // oracle: cyclic distances, every quadruple
        let n = 12usize;
        let cd = |i: usize, j: usize| i.abs_diff(j).min(n - i.abs_diff(j)) as u32;
        let mut best = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let mut s = [cd(a, b) + cd(c, e), cd(a, c) + cd(b, e), cd(a, e) + cd(b, c)];
                        s.sort_unstable();
                        best = best.max(s[2] - s[1]);
                    }
                }
            }
        }
        assert_eq!(best, 6);
        let r = delta_four_point(&cycle(n), 0, 7).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.delta4 * 2.0, f64::from(best));
    }

    #[test]
    fn disconnected_model_is_rejected() {
        let g = from_edges(3, &[(0, 1)]);
        assert_eq!(delta_four_point(&g, 10, 0), Err(Error::Disconnected));
    }

    #[test]
    fn tree_geodesics_guess_with_m_one() {
        let g = tree();
        let metric = ModelMetric::new(&g);
        let d = distance_matrix(&g).unwrap();
        let verts: Vec<usize> = (0..g.len()).collect();
        let pairs: Vec<(usize, usize)> = (0..8).flat_map(|i| (0..8).map(move |j| (i, j))).collect();
        let triples: Vec<(usize, usize, usize)> =
            (0..8).flat_map(|i| (0..8).flat_map(move |j| (0..8).map(move |k| (i, j, k)))).collect();
        let fam = |x: &usize, y: &usize| Some(geodesic(&g, &d, *x, *y));
        let r = guessing_check(&metric, &verts, &pairs, &triples, fam, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        // adjacent endpoints already give diameter one
        let r = guessing_check(&metric, &verts, &pairs, &[], fam, 0).unwrap();
        assert_eq!(r.violation, Some(GuessingViolation::LocalDiameter { pair: 1 }));
        // triangles in a tree are 0-slim
        let r = guessing_check(&metric, &verts, &[], &triples, fam, 0).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn constant_family_misses_an_endpoint() {
        let g = tree();
        let metric = ModelMetric::new(&g);
        let verts: Vec<usize> = (0..g.len()).collect();
        let r = guessing_check(&metric, &verts, &[(0, 3)], &[], |x, _| Some(vec![*x]), 0).unwrap();
        assert_eq!(r.violation, Some(GuessingViolation::MissingEndpoint { pair: 0 }));
    }

    #[test]
    fn family_gap_is_an_error() {
        let g = tree();
        let metric = ModelMetric::new(&g);
        let verts: Vec<usize> = (0..g.len()).collect();
        let r = guessing_check(&metric, &verts, &[(2, 5)], &[], |_, _| None, 0);
        assert_eq!(r, Err(Error::FamilyGap(2, 5)));
    }
}

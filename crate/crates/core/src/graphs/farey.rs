//! The Farey graph: slopes `p/q ∈ ℚ ∪ {∞}` with `p/q ~ r/s` iff `|ps − qr| = 1`.
//!
//! Distances are computed by moving the source to `∞` with an element of
//! `SL₂(ℤ)` and searching the ladder of the target's continued fraction, which
//! contains every geodesic between the two.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GraphKind, GraphModel, Recipe, Vertex, VertexKey};
use crate::error::{Error, Result};

/// A reduced slope: `gcd(p, q) = 1`, `q > 0`, or `∞ = 1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidTerm("0/0 is not a slope".into()));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn is_infinite(self) -> bool {
        self.q == 0
    }
}

impl TryFrom<(i64, i64)> for Slope {
    type Error = Error;
    fn try_from((p, q): (i64, i64)) -> Result<Self> {
        Slope::new(p, q)
    }
}

impl From<Slope> for (i64, i64) {
    fn from(s: Slope) -> Self {
        (s.p, s.q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "1/0")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl std::str::FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { at: 0, msg: format!("expected p/q, got `{s}`") };
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Slope::INFINITY);
        }
        let (a, b) = t.split_once('/').unwrap_or((t, "1"));
        let p = a.trim().parse().map_err(|_| bad())?;
        let q = b.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// `(x, y, g)` with `a x + b y = g = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum(), 0, a.abs())
    } else {
        let (x, y, g) = ext_gcd(b, a % b);
        (y, x - (a / b) * y, g)
    }
}

/// An integer 2×2 matrix `[[a, b], [c, d]]` acting by `p/q ↦ (ap + bq)/(cp + dq)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix(pub [[i64; 2]; 2]);

impl Matrix {
    pub const IDENTITY: Matrix = Matrix([[1, 0], [0, 1]]);
    /// The Anosov element `[[2, 1], [1, 1]]`.
    pub const ANOSOV: Matrix = Matrix([[2, 1], [1, 1]]);

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = o.0;
        Matrix([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])
    }

    pub fn pow(&self, k: u32) -> Matrix {
        (0..k).fold(Matrix::IDENTITY, |m, _| m.mul(self))
    }
}

pub fn farey_adjacent(s: Slope, t: Slope) -> bool {
    (s.p as i128 * t.q as i128 - s.q as i128 * t.p as i128).abs() == 1
}

pub fn farey_apply(m: &Matrix, s: Slope) -> Result<Slope> {
    let d = m.det();
    if d.abs() != 1 {
        return Err(Error::NonUnimodular(d));
    }
    let [[a, b], [c, e]] = m.0;
    Slope::new(a * s.p + b * s.q, c * s.p + e * s.q)
}

/// An element of `SL₂(ℤ)` sending `s` to `∞`.
fn to_infinity(s: Slope) -> Matrix {
    // top row pairs to 1 with (p, q), bottom row pairs to 0
    let (x, y, _) = ext_gcd(s.p, s.q);
    Matrix([[x, y], [-s.q, s.p]])
}

/// Vertices of the ladder from `∞` to `x`: the convergents of `x` and, in
/// each fan, the intermediate fractions next to its two ends. Fan interiors
/// are dropped since a path through them is never shorter than one through
/// the pivot.
fn ladder(x: Slope) -> Vec<Slope> {
    let mut out = vec![Slope::INFINITY];
    if x.is_infinite() {
        return out;
    }
    // continued fraction with floor division
    let (mut num, mut den) = (x.p, x.q);
    let mut quotients = Vec::new();
    while den != 0 {
        let a = num.div_euclid(den);
        quotients.push(a);
        (num, den) = (den, num - a * den);
    }
    let (mut p0, mut q0) = (1i64, 0i64);
    let (mut p1, mut q1) = (quotients[0], 1i64);
    // fan around ∞: integers between 0 and a_0 are adjacent to ∞ anyway
    out.push(Slope::new(p1, q1).unwrap());
    for &a in &quotients[1..] {
        for j in 1..a {
            if j <= 2 || j + 2 >= a {
                out.push(Slope::new(p0 + j * p1, q0 + j * q1).unwrap());
            }
        }
        let (p2, q2) = (p0 + a * p1, q0 + a * q1);
        out.push(Slope::new(p2, q2).unwrap());
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Breadth-first search over a finite vertex set, returning the path.
fn bfs_path(vertices: &[Slope], from: Slope, to: Slope) -> Option<Vec<Slope>> {
    let idx: HashMap<Slope, usize> = vertices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let (s, t) = (*idx.get(&from)?, *idx.get(&to)?);
    let mut prev = vec![usize::MAX; vertices.len()];
    prev[s] = s;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if u == t {
            break;
        }
        for v in 0..vertices.len() {
            if prev[v] == usize::MAX && farey_adjacent(vertices[u], vertices[v]) {
                prev[v] = u;
                q.push_back(v);
            }
        }
    }
    if prev[t] == usize::MAX {
        return None;
    }
    let mut path = vec![vertices[t]];
    let mut u = t;
    while u != s {
        u = prev[u];
        path.push(vertices[u]);
    }
    path.reverse();
    Some(path)
}

/// A geodesic from `s` to `t`.
pub fn farey_geodesic(s: Slope, t: Slope) -> Vec<Slope> {
    if s == t {
        return vec![s];
    }
    let m = to_infinity(s);
    let inv = Matrix([[m.0[1][1], -m.0[0][1]], [-m.0[1][0], m.0[0][0]]]);
    let x = farey_apply(&m, t).expect("unimodular by construction");
    let verts = ladder(x);
    let path = bfs_path(&verts, Slope::INFINITY, x).expect("ladder is connected");
    path.into_iter().map(|v| farey_apply(&inv, v).expect("unimodular by construction")).collect()
}

pub fn farey_distance(s: Slope, t: Slope) -> u32 {
    (farey_geodesic(s, t).len() - 1) as u32
}

/// The Farey graph restricted to reduced slopes with `|p|, |q| <= r`. Box
/// distances bound the Farey distance from above.
pub fn farey_graph(r: i64) -> Result<GraphModel> {
    if r < 1 {
        return Err(Error::Degenerate(format!("Farey box needs radius >= 1, got {r}")));
    }
    let mut slopes = BTreeSet::new();
    for q in 0..=r {
        for p in -r..=r {
            if let Ok(s) = Slope::new(p, q) {
                slopes.insert(s);
            }
        }
    }
    let slopes: Vec<Slope> = slopes.into_iter().collect();
    let mut edges = Vec::new();
    for (i, &s) in slopes.iter().enumerate() {
        for (j, &t) in slopes.iter().enumerate().skip(i + 1) {
            if farey_adjacent(s, t) {
                edges.push((i, j));
            }
        }
    }
    let vertices = slopes.into_iter().map(|s| Vertex { key: VertexKey::Slope(s), label: None }).collect();
    let mut params = BTreeMap::new();
    params.insert("radius".into(), serde_json::json!(r));
    GraphModel::new(
        GraphKind::Farey,
        Recipe { builder: "farey_graph".into(), params },
        vertices,
        edges,
        Some("box distances are upper bounds for Farey distances".into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn box_graph_bounds_distance() {
        let g = farey_graph(4).unwrap();
        let slope = |v: usize| match g.vertices[v].key {
            VertexKey::Slope(s) => s,
            _ => unreachable!(),
        };
        // ∞, then 9 + 4 + 6 + 4 reduced p/q with q = 1, 2, 3, 4
        assert_eq!(g.len(), 24);
        for v in 0..g.len() {
            let d = crate::metric::bfs_distances(&g, v).unwrap();
            for (w, dw) in d.into_iter().enumerate() {
                let dw = dw.expect("the box is connected");
                assert!(dw >= farey_distance(slope(v), slope(w)));
                assert_eq!(dw == 1, farey_adjacent(slope(v), slope(w)));
            }
        }
    }

    #[test]
    fn normal_form() {
        assert_eq!(sl(2, -4), sl(-1, 2));
        assert_eq!(sl(-3, 0), Slope::INFINITY);
        assert!(Slope::new(0, 0).is_err());
        assert_eq!("3/-6".parse::<Slope>().unwrap(), sl(-1, 2));
    }

    #[test]
    fn to_infinity_moves_the_source() {
        for s in [sl(0, 1), sl(3, 7), sl(-5, 2), Slope::INFINITY, sl(13, 8)] {
            let m = to_infinity(s);
            assert_eq!(m.det(), 1);
            assert_eq!(farey_apply(&m, s).unwrap(), Slope::INFINITY);
        }
    }

    #[test]
    fn small_distances() {
        assert_eq!(farey_distance(sl(0, 1), sl(0, 1)), 0);
        assert_eq!(farey_distance(Slope::INFINITY, sl(5, 1)), 1);
        assert_eq!(farey_distance(sl(0, 1), sl(1, 2)), 1);
        assert_eq!(farey_distance(Slope::INFINITY, sl(1, 2)), 2);
        assert_eq!(farey_distance(Slope::INFINITY, sl(2, 5)), 3);
        assert_eq!(farey_distance(Slope::INFINITY, sl(3, 8)), 3);
    }

    #[test]
    fn non_unimodular_is_rejected() {
        let m = Matrix([[2, 0], [0, 1]]);
        assert_eq!(farey_apply(&m, sl(1, 1)), Err(Error::NonUnimodular(2)));
    }
}

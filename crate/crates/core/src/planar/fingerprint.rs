//! Normal coordinates against two fixed ideal triangulations of the
//! punctured sphere.
//!
//! The vertices are `∞` (the outer boundary) and `p_1 … p_n`. The reference
//! triangulation `T₀` uses the axis segments `s_0 … s_n` together with the
//! fans of diagonals from `∞` to every puncture in both halves. Each half is
//! then split into triangles `t = 1 … n-1` with corners `∞, p_t, p_{t+1}`.
//! `T₁` keeps the axis segments but fans the upper half from `p_1` and the
//! lower half from `p_n`; it is only used to cross-check that `T₀` separates
//! classes.

use serde::{Deserialize, Serialize};

use super::class::{ArcClass, Class, ClassKind, Crossing, CurveClass, Half};
use super::config::{Chord, Node};
use crate::error::{Error, Result};

/// Corner slots inside one triangle: a piece of the class joining the bottom
/// edge to the left or right diagonal, or the two diagonals.
const S_LEFT: usize = 0;
const S_RIGHT: usize = 1;
const LEFT_RIGHT: usize = 2;

/// Terminal slots: pieces that start at a corner puncture of the triangle.
const FROM_LEFT: usize = 0;
const FROM_RIGHT: usize = 1;
const VERTEX_VERTEX: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub n: u8,
    pub kind: ClassKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<(u8, u8)>,
    /// `s_0 … s_n`, then upper diagonals `∞p_2 … ∞p_{n-1}`, then lower ones;
    /// `3n - 3` entries.
    pub edges: Vec<u32>,
    /// Per triangle, upper half first: `[bottom-left, bottom-right, left-right]`.
    pub corners: Vec<[u32; 3]>,
    /// Per triangle: `[from left vertex, from right vertex, vertex to vertex]`.
    pub terminals: Vec<[u32; 3]>,
}

/// Where a chord end sits relative to the triangles of one half.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Bottom,
    Left,
    Right,
    LeftVertex,
    RightVertex,
}

fn position(node: Node, segs: &[u8]) -> u32 {
    match node {
        Node::Puncture(k) => 2 * k as u32,
        Node::Point(i) => 2 * segs[i] as u32 + 1,
    }
}

/// Triangle and label of the chord end at line position `x`, for a chord
/// whose other end lies to the right (`rightward`) or to the left.
fn locate(n: u32, x: u32, rightward: bool) -> (u32, Label) {
    if x % 2 == 0 {
        let k = x / 2;
        if rightward {
            (k, Label::LeftVertex)
        } else {
            (k - 1, Label::RightVertex)
        }
    } else {
        let j = x / 2;
        if j == 0 {
            (1, Label::Left)
        } else if j == n {
            (n - 1, Label::Right)
        } else {
            (j, Label::Bottom)
        }
    }
}

fn chords_of(x: &Class) -> (Vec<u8>, Vec<Chord>) {
    let s = super::config::Strand::new(x);
    (s.segs, s.chords)
}

impl Fingerprint {
    pub fn of(x: &Class) -> Self {
        let n = x.n();
        let nn = n as u32;
        let (segs, chords) = chords_of(x);
        let mut edges = vec![0u32; 3 * n - 3];
        for &s in &segs {
            edges[s as usize] += 1;
        }
        let tri = n - 1;
        let mut corners = vec![[0u32; 3]; 2 * tri];
        let mut terminals = vec![[0u32; 3]; 2 * tri];
        for ch in &chords {
            let (a, b) = (position(ch.from, &segs), position(ch.to, &segs));
            let (l, r) = (a.min(b), a.max(b));
            let (diag_base, tri_base) = match ch.half {
                Half::Upper => (n + 1, 0),
                Half::Lower => (n + 1 + (n - 2), tri),
            };
            for k in 2..n as u32 {
                if l < 2 * k && 2 * k < r {
                    edges[diag_base + k as usize - 2] += 1;
                }
            }
            let (tl, ll) = locate(nn, l, true);
            let (tr, lr) = locate(nn, r, false);
            let mut tally = |t: u32, from: Label, to: Label| {
                let idx = tri_base + t as usize - 1;
                match (from, to) {
                    (Label::Bottom, Label::Right) => corners[idx][S_RIGHT] += 1,
                    (Label::Left, Label::Bottom) => corners[idx][S_LEFT] += 1,
                    (Label::Left, Label::Right) => corners[idx][LEFT_RIGHT] += 1,
                    (Label::LeftVertex, Label::Right) => terminals[idx][FROM_LEFT] += 1,
                    (Label::Left, Label::RightVertex) => terminals[idx][FROM_RIGHT] += 1,
                    (Label::LeftVertex, Label::RightVertex) => terminals[idx][VERTEX_VERTEX] += 1,
                    // corners at a puncture and backtracks are absent from
                    // reduced sequences
                    _ => unreachable!("unreduced chord {from:?} -> {to:?}"),
                }
            };
            if tl == tr {
                tally(tl, ll, lr);
            } else {
                tally(tl, ll, Label::Right);
                for t in (tl + 1)..tr {
                    tally(t, Label::Left, Label::Right);
                }
                tally(tr, Label::Left, lr);
            }
        }
        Fingerprint { n: n as u8, kind: x.kind(), endpoints: x.endpoints(), edges, corners, terminals }
    }

    /// Rebuilds the class carrying this fingerprint.
    pub fn to_class(&self) -> Result<Class> {
        let n = self.n as usize;
        let bad = |msg: &str| Error::NotEmbedded(format!("fingerprint: {msg}"));
        if n < 3
            || self.edges.len() != 3 * n - 3
            || self.corners.len() != 2 * (n - 1)
            || self.terminals.len() != 2 * (n - 1)
        {
            return Err(bad("wrong vector lengths"));
        }
        let tri = n - 1;
        // per half, per axis position (segment or puncture): (closing, opening)
        // chord ends, scanning left to right
        let count = |j: usize| self.edges[j] as usize;
        // item ids: segment j point r -> (2j+1, r); puncture k -> (2k, 0)
        let mut partner: [std::collections::HashMap<(u32, usize), (u32, usize)>; 2] = Default::default();
        for (h, base) in [(0usize, 0usize), (1, tri)] {
            let mut stack: Vec<(u32, usize)> = Vec::new();
            for x in 1..=(2 * n as u32 + 1) {
                let (closes, opens): (Vec<(u32, usize)>, Vec<(u32, usize)>) = if x % 2 == 1 {
                    let j = (x / 2) as usize;
                    let c = count(j);
                    let left = if j == 0 {
                        0
                    } else if j == n {
                        c
                    } else {
                        self.corners[base + j - 1][S_LEFT] as usize
                    };
                    if left > c {
                        return Err(bad("corner counts exceed edge weight"));
                    }
                    ((0..left).map(|r| (x, r)).collect(), (left..c).map(|r| (x, r)).collect())
                } else {
                    let k = (x / 2) as usize;
                    let mut closes = 0;
                    let mut opens = 0;
                    if k >= 2 {
                        let t = self.terminals[base + k - 2];
                        closes += t[FROM_RIGHT] + t[VERTEX_VERTEX];
                    }
                    if k < n {
                        let t = self.terminals[base + k - 1];
                        opens += t[FROM_LEFT] + t[VERTEX_VERTEX];
                    }
                    if closes + opens > 1 {
                        return Err(bad("more than one germ at a puncture"));
                    }
                    ((0..closes as usize).map(|r| (x, r)).collect(), (0..opens as usize).map(|r| (x, r)).collect())
                };
                for c in closes {
                    let o = stack.pop().ok_or_else(|| bad("unbalanced chords"))?;
                    partner[h].insert(c, o);
                    partner[h].insert(o, c);
                }
                stack.extend(opens);
            }
            if !stack.is_empty() {
                return Err(bad("unbalanced chords"));
            }
        }
        let seg_of = |x: u32| (x / 2) as u8;
        let walk = |start: (u32, usize), half: usize, out: &mut Vec<Crossing>| -> Result<(u32, usize)> {
            let mut cur = start;
            let mut h = half;
            loop {
                let next = *partner[h].get(&cur).ok_or_else(|| bad("dangling chord"))?;
                if next.0 % 2 == 0 || next == start {
                    return Ok(next);
                }
                // crossing the axis at `next` into the other half
                h = 1 - h;
                out.push(Crossing::new(seg_of(next.0), h == 0));
                cur = next;
                if out.len() > 4 * self.edges.iter().sum::<u32>() as usize + 4 {
                    return Err(bad("walk does not close"));
                }
            }
        };
        let total: u32 = self.edges[..=n].iter().sum();
        match self.kind {
            ClassKind::Arc => {
                let (s, e) = self.endpoints.ok_or_else(|| bad("arc without endpoints"))?;
                let germ = (2 * s as u32, 0);
                let half = if partner[0].contains_key(&germ) {
                    0
                } else if partner[1].contains_key(&germ) {
                    1
                } else {
                    return Err(bad("no germ at start"));
                };
                let mut word = Vec::new();
                let end = walk(germ, half, &mut word)?;
                if end != (2 * e as u32, 0) || word.len() as u32 != total {
                    return Err(bad("arc does not join its endpoints"));
                }
                let first = if half == 0 { Half::Upper } else { Half::Lower };
                let arc = ArcClass::from_path(n, s, e, first, &word)?;
                Ok(Class::Arc(arc))
            }
            ClassKind::Curve => {
                let start = (1..=n)
                    .find(|&j| self.edges[j - 1] > 0)
                    .map(|j| (2 * (j - 1) as u32 + 1, 0usize))
                    .ok_or_else(|| bad("empty curve"))?;
                // leave the start point into the lower half; the crossing at
                // the start point closes the cycle
                let mut word = Vec::new();
                let back = walk(start, 1, &mut word)?;
                if back != start {
                    return Err(bad("curve does not close"));
                }
                word.push(Crossing::new(seg_of(start.0), false));
                if word.len() as u32 != total {
                    return Err(bad("more than one component"));
                }
                Ok(Class::Curve(CurveClass::from_cycle(n, &word)?))
            }
        }
    }
}

/// Normal coordinates against the second triangulation `T₁`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SecondaryFingerprint {
    pub kind: ClassKind,
    pub endpoints: Option<(u8, u8)>,
    pub edges: Vec<u32>,
    /// For arcs: the half and far end position of the two end chords.
    pub germs: Vec<(Half, u32)>,
}

impl SecondaryFingerprint {
    pub fn of(x: &Class) -> Self {
        let n = x.n() as u32;
        let (segs, chords) = chords_of(x);
        let mut edges = vec![0u32; 3 * n as usize - 3];
        for &s in &segs {
            edges[s as usize] += 1;
        }
        // upper diagonals p_1 p_k (k = 3..n), lower diagonals p_k p_n (k = 1..n-2)
        let upper: Vec<(u32, u32)> = (3..=n).map(|k| (2, 2 * k)).collect();
        let lower: Vec<(u32, u32)> = (1..=n - 2).map(|k| (2 * k, 2 * n)).collect();
        let base = n as usize + 1;
        let mut germs = Vec::new();
        for ch in &chords {
            let (a, b) = (position(ch.from, &segs), position(ch.to, &segs));
            let (l, r) = (a.min(b), a.max(b));
            let diags = if ch.half == Half::Upper { &upper } else { &lower };
            let off = if ch.half == Half::Upper { 0 } else { n as usize - 2 };
            for (i, &(dl, dr)) in diags.iter().enumerate() {
                let crosses = (l < dl && dl < r && r < dr) || (dl < l && l < dr && dr < r);
                if crosses {
                    edges[base + off + i] += 1;
                }
            }
            for (node, other) in [(ch.from, b), (ch.to, a)] {
                if let Node::Puncture(_) = node {
                    germs.push((ch.half, other));
                }
            }
        }
        germs.sort();
        SecondaryFingerprint { kind: x.kind(), endpoints: x.endpoints(), edges, germs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::Word;

    fn arc(n: usize, i: u8, j: u8) -> Class {
        Class::Arc(ArcClass::over(n, i, j).unwrap())
    }

    #[test]
    fn triangulation_counts() {
        for n in 3..10usize {
            let v = n + 1;
            let fp = Fingerprint::of(&arc(n, 1, 2));
            assert_eq!(fp.edges.len(), 3 * v - 6);
            assert_eq!(fp.corners.len(), 2 * v - 4);
        }
    }

    #[test]
    fn golden_seed_arc() {
        let fp = Fingerprint::of(&arc(3, 1, 2));
        assert_eq!(fp.edges, vec![0, 0, 0, 0, 0, 0]);
        assert_eq!(fp.corners, vec![[0, 0, 0]; 4]);
        assert_eq!(fp.terminals, vec![[0, 0, 1], [0, 0, 0], [0, 0, 0], [0, 0, 0]]);
        assert_eq!(fp.endpoints, Some((1, 2)));
    }

    #[test]
    fn round_trip() {
        let seeds = [arc(5, 1, 2), arc(5, 2, 3), Class::Curve(CurveClass::round(5, 2, 4).unwrap())];
        for s in &seeds {
            for wd in ["", "s1", "s2 s3 S1", "S4 s2 s2 s1", "s3 s3 S2 s4 s1"] {
                let x = wd.parse::<Word>().unwrap().apply(s).unwrap();
                assert_eq!(Fingerprint::of(&x).to_class().unwrap(), x, "{wd} on {s}");
            }
        }
    }

    #[test]
    fn full_twist_changes_fingerprint() {
        let x = arc(3, 2, 3);
        let y = "s1 s1".parse::<Word>().unwrap().apply(&x).unwrap();
        assert_ne!(Fingerprint::of(&x), Fingerprint::of(&y));
    }
}

//! Unicorn arcs and unicorn paths between two arcs in minimal position.
//!
//! For arcs `a`, `b` with chosen endpoints `α ∈ ∂a`, `β ∈ ∂b` and a crossing
//! point `π`, let `a'` be the subarc of `a` from `α` to `π` and `b'` the subarc
//! of `b` from `π` to `β`. When `a' ∩ b' = {π}` the union `a' ∪ b'` is an
//! embedded arc from `α` to `β`, the unicorn arc at `π`. Crossing points where
//! `a'` and `b'` meet again before `π` give immersed paths, not arcs, and are
//! reported separately.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{distance_leq2, Distance, GraphKind};
use crate::planar::{
    crossing_abscissa, intersection_number, ArcClass, Class, Configuration, Crossing, Half, Layout, PuncturedDisk,
    Ratio,
};

/// One crossing point of `a` and `b`, with its rank along `a` from `α` and
/// along `b` from `β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossingPoint {
    pub along_a: usize,
    pub along_b: usize,
    pub unicorn: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicornDatum {
    pub alpha: u8,
    pub beta: u8,
    /// Crossing points of `a` and `b`, ordered along `a` from `α`.
    pub points: Vec<CrossingPoint>,
    /// Unicorn arcs in path order, from the one nearest `a` to the one
    /// nearest `b`.
    pub arcs: Vec<ArcClass>,
}

/// A strand read from a chosen endpoint: crossing word, first half, and the
/// map from configuration chord index to position along the reading.
struct Oriented {
    word: Vec<Crossing>,
    first: Half,
    chords: usize,
    reversed: bool,
}

impl Oriented {
    fn new(x: &ArcClass, from: u8) -> Result<Self> {
        let (_, first, word, _) = x.oriented_from(from)?;
        let (s, _) = x.endpoints();
        Ok(Oriented { chords: word.len() + 1, word, first, reversed: from != s })
    }

    fn order(&self, chord: usize) -> usize {
        if self.reversed {
            self.chords - 1 - chord
        } else {
            chord
        }
    }
}

/// Sort key of a crossing along one strand: the chord's position along the
/// reading, then the abscissa, increasing when the reading runs left to right.
fn along_key(
    cfg: &Configuration,
    layout: &Layout,
    or: &Oriented,
    class: usize,
    chord: usize,
    at: Ratio,
) -> (usize, Ratio, bool) {
    let ch = cfg.chords(class)[chord];
    let (xf, xt) = (layout.x(class, ch.from), layout.x(class, ch.to));
    let forward = (xf < xt) != or.reversed;
    (or.order(chord), at, forward)
}

fn cmp_key(a: &(usize, Ratio, bool), b: &(usize, Ratio, bool)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| {
        let o = a.1.cmp(b.1);
        if a.2 {
            o
        } else {
            o.reverse()
        }
    })
}

/// All crossing points of `a` and `b` with the unicorn arcs they give.
pub fn unicorn_datum(a: &ArcClass, alpha: u8, b: &ArcClass, beta: u8) -> Result<UnicornDatum> {
    let oa = Oriented::new(a, alpha)?;
    let ob = Oriented::new(b, beta)?;
    if alpha == beta {
        return Err(Error::SameEndpoint(alpha));
    }
    let (ca, cb) = (Class::Arc(a.clone()), Class::Arc(b.clone()));
    if ca == cb {
        return Ok(UnicornDatum { alpha, beta, points: Vec::new(), arcs: Vec::new() });
    }
    let cfg = Configuration::new(&[ca, cb])?;
    let layout = cfg.layout();
    let span = |class: usize, chord: usize| {
        let ch = cfg.chords(class)[chord];
        let (p, q) = (layout.x(class, ch.from), layout.x(class, ch.to));
        (p.min(q), p.max(q))
    };
    struct Raw {
        ka: (usize, Ratio, bool),
        kb: (usize, Ratio, bool),
        chord_a: usize,
        chord_b: usize,
    }
    let mut raw: Vec<Raw> = Vec::new();
    for x in cfg.crossings() {
        let (pa, pb) = if x.a.0 == 0 { (x.a, x.b) } else { (x.b, x.a) };
        if pa.0 != 0 || pb.0 != 1 {
            return Err(Error::NotEmbedded("self-crossing in unicorn input".into()));
        }
        let at = crossing_abscissa(span(0, pa.1), span(1, pb.1));
        raw.push(Raw {
            ka: along_key(&cfg, &layout, &oa, 0, pa.1, at),
            kb: along_key(&cfg, &layout, &ob, 1, pb.1, at),
            chord_a: oa.order(pa.1),
            chord_b: ob.order(pb.1),
        });
    }
    let k = raw.len();
    let mut by_a: Vec<usize> = (0..k).collect();
    by_a.sort_by(|&i, &j| cmp_key(&raw[i].ka, &raw[j].ka));
    let mut by_b: Vec<usize> = (0..k).collect();
    by_b.sort_by(|&i, &j| cmp_key(&raw[i].kb, &raw[j].kb));
    let mut rank_b = vec![0usize; k];
    for (r, &i) in by_b.iter().enumerate() {
        rank_b[i] = r;
    }
    let mut points = Vec::with_capacity(k);
    let mut arcs_by_a = Vec::new();
    let mut best_b = usize::MAX;
    for (ra, &i) in by_a.iter().enumerate() {
        let unicorn = rank_b[i] < best_b;
        best_b = best_b.min(rank_b[i]);
        points.push(CrossingPoint { along_a: ra, along_b: rank_b[i], unicorn });
        if unicorn {
            let r = &raw[i];
            let mut word: Vec<Crossing> = oa.word[..r.chord_a].to_vec();
            word.extend(ob.word[..r.chord_b].iter().rev().map(|c| c.flipped()));
            arcs_by_a.push(ArcClass::from_path(a.n(), alpha, beta, oa.first, &word)?);
        }
    }
    // the unicorn with the longest initial piece of `a` sits next to `a`
    arcs_by_a.reverse();
    Ok(UnicornDatum { alpha, beta, points, arcs: arcs_by_a })
}

/// Unicorn arcs from `a^α`, `b^β`, in path order.
pub fn unicorn_arcs(a: &ArcClass, alpha: u8, b: &ArcClass, beta: u8) -> Result<Vec<ArcClass>> {
    Ok(unicorn_datum(a, alpha, b, beta)?.arcs)
}

/// The path `(a, c_1, …, c_k, b)`; every consecutive pair is checked to be
/// disjoint.
pub fn unicorn_path(a: &ArcClass, alpha: u8, b: &ArcClass, beta: u8) -> Result<Vec<ArcClass>> {
    let mut path = vec![a.clone()];
    path.extend(unicorn_arcs(a, alpha, b, beta)?);
    path.push(b.clone());
    for (i, w) in path.windows(2).enumerate() {
        let k = intersection_number(&Class::Arc(w[0].clone()), &Class::Arc(w[1].clone()));
        if k != 0 {
            return Err(Error::NotAPath { index: i, intersection: k });
        }
    }
    Ok(path)
}

/// The subgraph `A(a, b)`: the edge when `a` and `b` are disjoint, otherwise
/// the union of the unicorn paths over endpoint choices `α ≠ β`, read from
/// both sides.
pub fn a_family(a: &ArcClass, b: &ArcClass) -> Result<Vec<ArcClass>> {
    let mut out: BTreeSet<ArcClass> = BTreeSet::new();
    out.insert(a.clone());
    out.insert(b.clone());
    if intersection_number(&Class::Arc(a.clone()), &Class::Arc(b.clone())) == 0 {
        return Ok(out.into_iter().collect());
    }
    let (a0, a1) = a.endpoints();
    let (b0, b1) = b.endpoints();
    for alpha in [a0, a1] {
        for beta in [b0, b1] {
            if alpha == beta {
                continue;
            }
            out.extend(unicorn_path(a, alpha, b, beta)?);
            out.extend(unicorn_path(b, beta, a, alpha)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Whether every vertex of `A(a, b)` lies within distance 2 of `A(a, d) ∪
/// A(d, b)` in the arc graph on arcs with distinct endpoints in the marked
/// punctures, with distances decided exactly.
pub fn slim_check(a: &ArcClass, b: &ArcClass, d: &ArcClass, disk: &PuncturedDisk) -> Result<bool> {
    Ok(slim_violation(a, b, d, disk)?.is_none())
}

/// First vertex of `A(a, b)` farther than 2 from `A(a, d) ∪ A(d, b)`.
pub fn slim_violation(a: &ArcClass, b: &ArcClass, d: &ArcClass, disk: &PuncturedDisk) -> Result<Option<ArcClass>> {
    let target: BTreeSet<ArcClass> = a_family(a, d)?.into_iter().chain(a_family(d, b)?).collect();
    for c in a_family(a, b)? {
        if target.contains(&c) {
            continue;
        }
        let cc = Class::Arc(c.clone());
        let mut near = false;
        for t in &target {
            let dist = distance_leq2(GraphKind::A2, &cc, &Class::Arc(t.clone()), disk)?;
            if dist != Distance::AtLeastThree {
                near = true;
                break;
            }
        }
        if !near {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{Marks, Word};

    fn arc(n: usize, i: u8, j: u8) -> ArcClass {
        ArcClass::over(n, i, j).unwrap()
    }

    fn twisted(w: &str, a: &ArcClass) -> ArcClass {
        let x = w.parse::<Word>().unwrap().apply(&Class::Arc(a.clone())).unwrap();
        x.as_arc().unwrap().clone()
    }

    #[test]
    fn disjoint_arcs_give_no_unicorns() {
        let (a, b) = (arc(5, 1, 2), arc(5, 3, 4));
        assert!(unicorn_arcs(&a, 1, &b, 4).unwrap().is_empty());
        assert_eq!(unicorn_path(&a, 1, &b, 4).unwrap(), vec![a, b]);
    }

    #[test]
    fn identical_arcs_give_no_unicorns() {
        let a = arc(4, 1, 2);
        let b = twisted("s2 s1 s1 s2", &a);
        assert_eq!(a, b);
        assert!(unicorn_arcs(&a, 1, &b, 2).unwrap().is_empty());
    }

    #[test]
    fn single_crossing_gives_one_unicorn() {
        // upper arcs with interleaved endpoints cross once
        let (a, b) = (arc(5, 1, 3), arc(5, 2, 4));
        assert_eq!(intersection_number(&Class::Arc(a.clone()), &Class::Arc(b.clone())), 1);
        for (alpha, beta) in [(1, 2), (1, 4), (3, 2), (3, 4)] {
            let arcs = unicorn_arcs(&a, alpha, &b, beta).unwrap();
            assert_eq!(arcs.len(), 1);
            let (p, q) = arcs[0].endpoints();
            assert_eq!((p, q), (alpha.min(beta), alpha.max(beta)));
        }
        // from 1 over p2 to 4 is the upper arc (1, 4)
        assert_eq!(unicorn_arcs(&a, 1, &b, 4).unwrap()[0], arc(5, 1, 4));
    }

    #[test]
    fn unicorn_endpoints_and_path_validity() {
        let n = 6;
        let words = ["s2 s3", "S1 s4 s2", "s3 s3 S2 s1", "s5 S4 s3 s2 s2", "S2 S3 s1 s4"];
        for wa in words {
            for wb in words {
                let a = twisted(wa, &arc(n, 1, 2));
                let b = twisted(wb, &arc(n, 3, 4));
                let (a0, a1) = a.endpoints();
                let (b0, b1) = b.endpoints();
                for alpha in [a0, a1] {
                    for beta in [b0, b1] {
                        if alpha == beta {
                            continue;
                        }
                        let path = unicorn_path(&a, alpha, &b, beta).unwrap();
                        for c in &path[1..path.len() - 1] {
                            let (p, q) = c.endpoints();
                            assert_eq!((p.min(q), p.max(q)), (alpha.min(beta), alpha.max(beta)));
                        }
                        let i = intersection_number(&Class::Arc(a.clone()), &Class::Arc(b.clone()));
                        assert!(path.len() <= i as usize + 2);
                    }
                }
            }
        }
    }

    #[test]
    fn point_table_marks_first_hits() {
        let a = twisted("s2 s3 s2", &arc(6, 1, 2));
        let b = twisted("S3 s4 s1", &arc(6, 4, 5));
        let (a0, _) = a.endpoints();
        let (b0, b1) = b.endpoints();
        let beta = if b0 != a0 { b0 } else { b1 };
        let d = unicorn_datum(&a, a0, &b, beta).unwrap();
        let mut best = usize::MAX;
        for p in &d.points {
            assert_eq!(p.unicorn, p.along_b < best);
            best = best.min(p.along_b);
        }
        assert_eq!(d.points.iter().filter(|p| p.unicorn).count(), d.arcs.len());
    }

    #[test]
    fn a_family_of_adjacent_pair_is_the_edge() {
        let (a, b) = (arc(5, 1, 2), arc(5, 2, 3));
        assert_eq!(a_family(&a, &b).unwrap(), vec![a, b]);
    }

    #[test]
    fn slim_when_third_arc_equals_first() {
        let disk = PuncturedDisk::new(6, Marks::Points(vec![1, 2, 3, 4, 5])).unwrap();
        let a = arc(6, 1, 2);
        let b = twisted("s2 s3 S1", &arc(6, 3, 4));
        assert!(slim_check(&a, &b, &a, &disk).unwrap());
    }
}

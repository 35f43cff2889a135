//! Simultaneous minimal position for a finite system of distinct classes.
//!
//! Every class keeps its reduced cutting sequence; what remains to choose is
//! the left-to-right order of all crossing points on each axis segment. Two
//! strands that run parallel are ordered by where they first diverge, and a
//! forced crossing inside a parallel stretch is pushed to one canonical end
//! of the stretch. Chords are then drawn as semicircles over the axis, which
//! cross exactly when their endpoints interleave.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::class::{Class, Half};
use crate::error::{Error, Result};

/// A node of a strand: one of its axis crossings or an endpoint puncture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Point(usize),
    Puncture(u8),
}

/// A chord: the piece of a strand between consecutive nodes, lying in one
/// half. `from` precedes `to` along the class orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub half: Half,
    pub from: Node,
    pub to: Node,
}

#[derive(Debug, Clone)]
pub(crate) struct Strand {
    pub segs: Vec<u8>,
    pub chords: Vec<Chord>,
    // chord index on the upper / lower side of each point
    pub upper_chord: Vec<usize>,
    pub lower_chord: Vec<usize>,
}

impl Strand {
    pub fn new(x: &Class) -> Self {
        let cr = x.crossings();
        let m = cr.len();
        let segs: Vec<u8> = cr.iter().map(|c| c.seg).collect();
        let mut chords = Vec::with_capacity(m + 1);
        match x {
            Class::Arc(a) => {
                let (s, e) = a.endpoints();
                let node = |t: usize| {
                    if t == 0 {
                        Node::Puncture(s)
                    } else if t == m + 1 {
                        Node::Puncture(e)
                    } else {
                        Node::Point(t - 1)
                    }
                };
                for t in 0..=m {
                    let half = if t == 0 { a.first_half() } else { cr[t - 1].into_half() };
                    chords.push(Chord { half, from: node(t), to: node(t + 1) });
                }
            }
            Class::Curve(_) => {
                for t in 0..m {
                    chords.push(Chord { half: cr[t].into_half(), from: Node::Point(t), to: Node::Point((t + 1) % m) });
                }
            }
        }
        let mut upper_chord = vec![usize::MAX; m];
        let mut lower_chord = vec![usize::MAX; m];
        for (t, ch) in chords.iter().enumerate() {
            for node in [ch.from, ch.to] {
                if let Node::Point(k) = node {
                    match ch.half {
                        Half::Upper => upper_chord[k] = t,
                        Half::Lower => lower_chord[k] = t,
                    }
                }
            }
        }
        Strand { segs, chords, upper_chord, lower_chord }
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn chord_at(&self, k: usize, half: Half) -> usize {
        match half {
            Half::Upper => self.upper_chord[k],
            Half::Lower => self.lower_chord[k],
        }
    }

    pub fn neighbor(&self, k: usize, half: Half) -> Node {
        let ch = self.chords[self.chord_at(k, half)];
        if ch.from == Node::Point(k) {
            ch.to
        } else {
            ch.from
        }
    }
}

/// A point of the system: (class index, point index).
pub type PointId = (usize, usize);

/// A transverse crossing between two chords of the system, each given as
/// (class index, chord index). `a.0 <= b.0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChordCrossing {
    pub half: Half,
    pub a: (usize, usize),
    pub b: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct Configuration {
    n: usize,
    classes: Vec<Class>,
    pub(crate) strands: Vec<Strand>,
    rank: Vec<Vec<u32>>,
    on_segment: Vec<Vec<PointId>>,
}

enum Walk {
    Decided { p_left: bool, end: (PointId, PointId), steps: usize },
    Open,
}

impl Configuration {
    /// Places pairwise distinct classes on a common disk in simultaneous
    /// minimal position.
    pub fn new(classes: &[Class]) -> Result<Self> {
        let n = classes.first().map(|c| c.n()).unwrap_or(0);
        for c in classes {
            if c.n() != n {
                return Err(Error::DiskMismatch(n, c.n()));
            }
        }
        for (i, c) in classes.iter().enumerate() {
            if classes[..i].contains(c) {
                return Err(Error::Degenerate(format!("class {c} appears twice in the system")));
            }
        }
        let strands: Vec<Strand> = classes.iter().map(Strand::new).collect();
        let mut on_segment: Vec<Vec<PointId>> = vec![Vec::new(); n + 1];
        for (ci, s) in strands.iter().enumerate() {
            for (k, &seg) in s.segs.iter().enumerate() {
                on_segment[seg as usize].push((ci, k));
            }
        }
        let mut cfg = Configuration { n, classes: classes.to_vec(), strands, rank: Vec::new(), on_segment: Vec::new() };
        let mut stretches = Stretches::default();
        let rels: Vec<Vec<Vec<Rel>>> = on_segment.iter().map(|list| cfg.relations(list, &mut stretches)).collect();
        let offset = stretches.offsets();
        let mut choice = vec![true; *offset.last().unwrap()];
        if !rels.iter().all(|r| acyclic(r, &choice, &offset)) {
            choice = place_crossings(&rels, &stretches, &offset)
                .ok_or_else(|| Error::Degenerate("no consistent minimal position".into()))?;
        }
        for (list, rel) in on_segment.iter_mut().zip(&rels) {
            let wins = scores(rel, &choice, &offset);
            let mut idx: Vec<usize> = (0..list.len()).collect();
            idx.sort_by_key(|&i| std::cmp::Reverse(wins[i]));
            *list = idx.into_iter().map(|i| list[i]).collect();
        }
        let mut rank: Vec<Vec<u32>> = cfg.strands.iter().map(|s| vec![0; s.len()]).collect();
        for list in &on_segment {
            for (r, &(ci, k)) in list.iter().enumerate() {
                rank[ci][k] = r as u32;
            }
        }
        cfg.rank = rank;
        cfg.on_segment = on_segment;
        Ok(cfg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn chords(&self, class: usize) -> &[Chord] {
        &self.strands[class].chords
    }

    /// Points on segment `s_j`, left to right.
    pub fn segment(&self, j: usize) -> &[PointId] {
        &self.on_segment[j]
    }

    /// Position of a node on the axis, ordered lexicographically: punctures
    /// sit at `(2k, 0)`, the points of `s_j` at `(2j + 1, rank)`.
    pub fn line_position(&self, class: usize, node: Node) -> (u32, u32) {
        match node {
            Node::Puncture(k) => (2 * k as u32, 0),
            Node::Point(i) => (2 * self.strands[class].segs[i] as u32 + 1, self.rank[class][i]),
        }
    }

    fn walk(&self, p: PointId, q: PointId, half: Half) -> Walk {
        let (mut p, mut q, mut half) = (p, q, half);
        let mut seg = self.strands[p.0].segs[p.1];
        let mut flipped = false;
        let limit = 2 * (self.strands[p.0].len() + self.strands[q.0].len()) + 4;
        for steps in 0..limit {
            let pn = self.strands[p.0].neighbor(p.1, half);
            let qn = self.strands[q.0].neighbor(q.1, half);
            match (pn, qn) {
                (Node::Point(a), Node::Point(b)) if self.strands[p.0].segs[a] == self.strands[q.0].segs[b] => {
                    p = (p.0, a);
                    q = (q.0, b);
                    seg = self.strands[p.0].segs[a];
                    half = half.other();
                    flipped = !flipped;
                }
                (Node::Puncture(x), Node::Puncture(y)) if x == y => return Walk::Open,
                _ => {
                    let kp = divergence_key(pn, &self.strands[p.0], seg);
                    let kq = divergence_key(qn, &self.strands[q.0], seg);
                    let end = if (p.0, p.1) <= (q.0, q.1) { (p, q) } else { (q, p) };
                    return Walk::Decided { p_left: (kp > kq) != flipped, end, steps };
                }
            }
        }
        Walk::Open
    }

    /// Pairwise order of the points of one segment.
    fn relations(&self, list: &[PointId], stretches: &mut Stretches) -> Vec<Vec<Rel>> {
        let m = list.len();
        let mut rel = vec![vec![Rel::Fixed(false); m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let r = self.relation(list[i], list[j], stretches);
                rel[i][j] = r;
                rel[j][i] = r.flip();
            }
        }
        rel
    }

    /// Whether `p` lies left of `q`. When the walks out of a parallel stretch
    /// decide differently the stretch carries one crossing; a pair between
    /// the crossing and an end takes that end's order.
    fn relation(&self, p: PointId, q: PointId, stretches: &mut Stretches) -> Rel {
        match (self.walk(p, q, Half::Upper), self.walk(p, q, Half::Lower)) {
            (Walk::Decided { p_left: a, end: ea, steps: ka }, Walk::Decided { p_left: b, end: eb, steps: kb }) => {
                if a == b {
                    return Rel::Fixed(a);
                }
                // measured from the smaller end
                let (low_left, t) = if ea <= eb { (a, ka) } else { (b, kb) };
                let stretch = stretches.id((ea.min(eb), ea.max(eb)), ka + kb);
                Rel::Forced { stretch, t, low_left }
            }
            (Walk::Decided { p_left, .. }, Walk::Open) | (Walk::Open, Walk::Decided { p_left, .. }) => {
                Rel::Fixed(p_left)
            }
            (Walk::Open, Walk::Open) => Rel::Fixed(p < q),
        }
    }

    fn chord_span(&self, class: usize, chord: usize) -> ((u32, u32), (u32, u32)) {
        let ch = self.strands[class].chords[chord];
        let a = self.line_position(class, ch.from);
        let b = self.line_position(class, ch.to);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// All transverse crossings between chords, including crossings of a
    /// class with itself (there are none for embedded classes).
    pub fn crossings(&self) -> Vec<ChordCrossing> {
        let mut spans: Vec<(Half, (usize, usize), ((u32, u32), (u32, u32)))> = Vec::new();
        for (ci, s) in self.strands.iter().enumerate() {
            for (t, ch) in s.chords.iter().enumerate() {
                spans.push((ch.half, (ci, t), self.chord_span(ci, t)));
            }
        }
        let mut out = Vec::new();
        for i in 0..spans.len() {
            for j in (i + 1)..spans.len() {
                let (h1, id1, (l1, r1)) = spans[i];
                let (h2, id2, (l2, r2)) = spans[j];
                if h1 == h2 && interleaved(l1, r1, l2, r2) {
                    out.push(ChordCrossing { half: h1, a: id1, b: id2 });
                }
            }
        }
        out
    }

    /// Number of crossings between classes `i` and `j` (`i != j`).
    pub fn count_between(&self, i: usize, j: usize) -> u32 {
        let mut count = 0;
        for (t, a) in self.strands[i].chords.iter().enumerate() {
            let (l1, r1) = self.chord_span(i, t);
            for (u, b) in self.strands[j].chords.iter().enumerate() {
                if a.half != b.half {
                    continue;
                }
                let (l2, r2) = self.chord_span(j, u);
                if interleaved(l1, r1, l2, r2) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Integer layout of the axis: every puncture and point gets a distinct
    /// abscissa in `1..=N`; `0` and `N + 1` stand for the two ends of the axis
    /// at the outer boundary.
    pub fn layout(&self) -> Layout {
        let mut items: Vec<((u32, u32), Option<PointId>, u8)> = Vec::new();
        for k in 1..=self.n as u8 {
            items.push(((2 * k as u32, 0), None, k));
        }
        for (ci, s) in self.strands.iter().enumerate() {
            for k in 0..s.len() {
                items.push((self.line_position(ci, Node::Point(k)), Some((ci, k)), 0));
            }
        }
        items.sort();
        let mut point_x: Vec<Vec<i64>> = self.strands.iter().map(|s| vec![0; s.len()]).collect();
        let mut puncture_x = vec![0i64; self.n + 1];
        for (idx, (_, pid, k)) in items.iter().enumerate() {
            let x = idx as i64 + 1;
            match pid {
                Some((ci, i)) => point_x[*ci][*i] = x,
                None => puncture_x[*k as usize] = x,
            }
        }
        Layout { point_x, puncture_x, right_end: items.len() as i64 + 1 }
    }
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub point_x: Vec<Vec<i64>>,
    pub puncture_x: Vec<i64>,
    pub right_end: i64,
}

impl Layout {
    pub fn x(&self, class: usize, node: Node) -> i64 {
        match node {
            Node::Puncture(k) => self.puncture_x[k as usize],
            Node::Point(i) => self.point_x[class][i],
        }
    }
}

/// Exact rational `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ratio {
    pub num: i128,
    pub den: i128,
}

impl Ratio {
    pub fn cmp(self, o: Ratio) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// Abscissa where the semicircles over `c` and `d` (same half, interleaved
/// endpoints) cross.
pub(crate) fn crossing_abscissa(c: (i64, i64), d: (i64, i64)) -> Ratio {
    let (lc, rc) = (c.0 as i128, c.1 as i128);
    let (ld, rd) = (d.0 as i128, d.1 as i128);
    let mut num = ld * rd - lc * rc;
    let mut den = (ld + rd) - (lc + rc);
    if den < 0 {
        num = -num;
        den = -den;
    }
    Ratio { num, den }
}

fn divergence_key(node: Node, strand: &Strand, seg: u8) -> u64 {
    const FAR: u64 = 1 << 20;
    let pos = match node {
        Node::Puncture(k) => 2 * k as u64,
        Node::Point(i) => 2 * strand.segs[i] as u64 + 1,
    };
    if pos > 2 * seg as u64 + 1 {
        pos
    } else {
        pos + FAR
    }
}

fn interleaved(l1: (u32, u32), r1: (u32, u32), l2: (u32, u32), r2: (u32, u32)) -> bool {
    (l1 < l2 && l2 < r1 && r1 < r2) || (l2 < l1 && l1 < r2 && r2 < r1)
}

type Ends = (PointId, PointId);

/// Parallel stretches with a forced crossing, numbered by their pair of ends.
/// A stretch of `len + 1` point pairs has `len + 2` places for its crossing;
/// boolean `t` of a stretch says whether the crossing lies beyond pair `t`
/// counted from the smaller end.
#[derive(Default)]
struct Stretches {
    ids: BTreeMap<(Ends, Ends), usize>,
    len: Vec<usize>,
}

impl Stretches {
    fn id(&mut self, ends: (Ends, Ends), len: usize) -> usize {
        let next = self.len.len();
        let id = *self.ids.entry(ends).or_insert(next);
        if id == next {
            self.len.push(len);
        }
        id
    }

    /// Start of each stretch's booleans, with the total at the end.
    fn offsets(&self) -> Vec<usize> {
        let mut out = vec![0];
        for &l in &self.len {
            out.push(out.last().unwrap() + l + 1);
        }
        out
    }
}

/// Order of two points on a segment: fixed, or, inside a forced stretch,
/// `low_left` while the crossing lies beyond the pair and its negation once
/// the crossing sits between the pair and the smaller end.
#[derive(Debug, Clone, Copy)]
enum Rel {
    Fixed(bool),
    Forced { stretch: usize, t: usize, low_left: bool },
}

impl Rel {
    fn flip(self) -> Rel {
        match self {
            Rel::Fixed(b) => Rel::Fixed(!b),
            Rel::Forced { stretch, t, low_left } => Rel::Forced { stretch, t, low_left: !low_left },
        }
    }

    /// `Err((var, value))`: left exactly when boolean `var` equals `value`.
    fn literal(self, offset: &[usize]) -> std::result::Result<bool, (usize, bool)> {
        match self {
            Rel::Fixed(b) => Ok(b),
            Rel::Forced { stretch, t, low_left } => Err((offset[stretch] + t, low_left)),
        }
    }

    fn left(self, choice: &[bool], offset: &[usize]) -> bool {
        match self.literal(offset) {
            Ok(b) => b,
            Err((v, want)) => choice[v] == want,
        }
    }
}

/// Number of points each point lies left of.
fn scores(rel: &[Vec<Rel>], choice: &[bool], offset: &[usize]) -> Vec<usize> {
    (0..rel.len()).map(|i| (0..rel.len()).filter(|&j| j != i && rel[i][j].left(choice, offset)).count()).collect()
}

/// A tournament is transitive exactly when its scores are all distinct.
fn acyclic(rel: &[Vec<Rel>], choice: &[bool], offset: &[usize]) -> bool {
    let mut seen = vec![false; rel.len()];
    for w in scores(rel, choice, offset) {
        if std::mem::replace(&mut seen[w], true) {
            return false;
        }
    }
    true
}

/// Crossing positions for all forced stretches such that every segment
/// order is transitive, as a satisfiability problem: no triple of points
/// may be cyclic, and the booleans of a stretch are monotone.
fn place_crossings(rels: &[Vec<Vec<Rel>>], stretches: &Stretches, offset: &[usize]) -> Option<Vec<bool>> {
    let nvars = *offset.last().unwrap();
    let mut clauses: Vec<Vec<(usize, bool)>> = Vec::new();
    for (s, &l) in stretches.len.iter().enumerate() {
        for t in 0..l {
            clauses.push(vec![(offset[s] + t + 1, false), (offset[s] + t, true)]);
        }
    }
    for rel in rels {
        let m = rel.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let lits = [rel[i][j], rel[j][k], rel[k][i]].map(|r| r.literal(offset));
                    if lits.iter().all(|l| l.is_ok()) {
                        if lits[0] == lits[1] && lits[1] == lits[2] {
                            return None;
                        }
                        continue;
                    }
                    // forbid all three left, then all three right
                    for cyc in [true, false] {
                        let mut clause = Vec::new();
                        let mut satisfied = false;
                        for l in lits {
                            match l {
                                Ok(b) if b != cyc => satisfied = true,
                                Ok(_) => {}
                                Err((v, want)) => clause.push((v, if cyc { !want } else { want })),
                            }
                        }
                        if !satisfied {
                            clauses.push(clause);
                        }
                    }
                }
            }
        }
    }
    Sat::new(nvars, clauses).solve()
}

/// Small DPLL solver with unit propagation; literals are `(var, value)`.
struct Sat {
    clauses: Vec<Vec<(usize, bool)>>,
    occurs: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    trail: Vec<usize>,
}

impl Sat {
    fn new(nvars: usize, clauses: Vec<Vec<(usize, bool)>>) -> Self {
        let mut occurs = vec![Vec::new(); nvars];
        for (c, clause) in clauses.iter().enumerate() {
            for &(v, _) in clause {
                occurs[v].push(c);
            }
        }
        Sat { clauses, occurs, assign: vec![None; nvars], trail: Vec::new() }
    }

    fn solve(mut self) -> Option<Vec<bool>> {
        for c in 0..self.clauses.len() {
            if self.clauses[c].is_empty() {
                return None;
            }
            if let [(v, b)] = self.clauses[c][..] {
                if self.assign[v] == Some(!b) || !self.set(v, b) {
                    return None;
                }
            }
        }
        self.search().then(|| self.assign.iter().map(|a| a.unwrap_or(true)).collect())
    }

    fn search(&mut self) -> bool {
        let Some(v) = self.assign.iter().position(Option::is_none) else {
            return true;
        };
        for b in [true, false] {
            let mark = self.trail.len();
            if self.set(v, b) && self.search() {
                return true;
            }
            while self.trail.len() > mark {
                let u = self.trail.pop().unwrap();
                self.assign[u] = None;
            }
        }
        false
    }

    /// Assigns and propagates; false on conflict.
    fn set(&mut self, v: usize, b: bool) -> bool {
        let mut queue = vec![(v, b)];
        while let Some((v, b)) = queue.pop() {
            match self.assign[v] {
                Some(x) if x == b => continue,
                Some(_) => return false,
                None => {
                    self.assign[v] = Some(b);
                    self.trail.push(v);
                }
            }
            for &c in &self.occurs[v] {
                let mut open = None;
                let mut count = 0;
                let mut sat = false;
                for &(u, want) in &self.clauses[c] {
                    match self.assign[u] {
                        Some(x) if x == want => {
                            sat = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            count += 1;
                            open = Some((u, want));
                        }
                    }
                }
                if sat {
                    continue;
                }
                match (count, open) {
                    (0, _) => return false,
                    (1, Some(lit)) => queue.push(lit),
                    _ => {}
                }
            }
        }
        true
    }
}

/// Geometric intersection number of two classes on the same disk. Shared
/// endpoint punctures do not count.
///
/// Panics if the classes live on disks with different puncture counts.
pub fn intersection_number(a: &Class, b: &Class) -> u32 {
    assert_eq!(a.n(), b.n(), "classes on different disks");
    if a == b {
        return 0;
    }
    let cfg = Configuration::new(&[a.clone(), b.clone()]).expect("distinct classes on one disk");
    cfg.count_between(0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{ArcClass, CurveClass, Word};

    fn arc(n: usize, i: u8, j: u8) -> Class {
        Class::Arc(ArcClass::over(n, i, j).unwrap())
    }

    fn curve(n: usize, lo: u8, hi: u8) -> Class {
        Class::Curve(CurveClass::round(n, lo, hi).unwrap())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Smallest number of crossings between two classes over every choice of
    /// point orders on the segments that keeps each class embedded.
    fn brute_force(a: &Class, b: &Class) -> u32 {
        let classes = [a.clone(), b.clone()];
        let strands: Vec<Strand> = classes.iter().map(Strand::new).collect();
        let n = a.n();
        let mut per_seg: Vec<Vec<PointId>> = vec![Vec::new(); n + 1];
        for (ci, s) in strands.iter().enumerate() {
            for (k, &seg) in s.segs.iter().enumerate() {
                per_seg[seg as usize].push((ci, k));
            }
        }
        let mut best = u32::MAX;
        let mut rank: Vec<Vec<u32>> = strands.iter().map(|s| vec![0; s.len()]).collect();
        search(&strands, &per_seg, 0, &mut rank, &mut best);
        best
    }

    fn search(strands: &[Strand], per_seg: &[Vec<PointId>], j: usize, rank: &mut Vec<Vec<u32>>, best: &mut u32) {
        if j == per_seg.len() {
            let pos = |ci: usize, node: Node| match node {
                Node::Puncture(k) => (2 * k as u32, 0),
                Node::Point(i) => (2 * strands[ci].segs[i] as u32 + 1, rank[ci][i]),
            };
            let span = |ci: usize, ch: &Chord| {
                let (x, y) = (pos(ci, ch.from), pos(ci, ch.to));
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            };
            let mut counts = [[0u32; 2]; 2];
            for ci in 0..2 {
                for cj in ci..2 {
                    for (t, a) in strands[ci].chords.iter().enumerate() {
                        for (u, b) in strands[cj].chords.iter().enumerate() {
                            if a.half != b.half || (ci == cj && u <= t) {
                                continue;
                            }
                            let (l1, r1) = span(ci, a);
                            let (l2, r2) = span(cj, b);
                            if interleaved(l1, r1, l2, r2) {
                                counts[ci][cj] += 1;
                            }
                        }
                    }
                }
            }
            if counts[0][0] == 0 && counts[1][1] == 0 {
                *best = (*best).min(counts[0][1]);
            }
            return;
        }
        let pts = &per_seg[j];
        let mut perm: Vec<usize> = (0..pts.len()).collect();
        loop {
            for (r, &idx) in perm.iter().enumerate() {
                let (ci, k) = pts[idx];
                rank[ci][k] = r as u32;
            }
            search(strands, per_seg, j + 1, rank, best);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn seed_values() {
        assert_eq!(intersection_number(&curve(5, 1, 2), &curve(5, 2, 3)), 2);
        assert_eq!(intersection_number(&arc(5, 1, 2), &arc(5, 2, 3)), 0);
        assert_eq!(intersection_number(&arc(5, 1, 2), &arc(5, 1, 2)), 0);
        assert_eq!(intersection_number(&curve(5, 1, 2), &curve(5, 4, 5)), 0);
        assert_eq!(intersection_number(&curve(5, 1, 2), &arc(5, 2, 3)), 1);
        assert_eq!(intersection_number(&curve(5, 1, 3), &arc(5, 2, 3)), 0);
    }

    #[test]
    fn matches_brute_force_on_small_words() {
        let seeds = [arc(4, 1, 2), arc(4, 2, 3), curve(4, 1, 2), curve(4, 2, 3)];
        let words = ["s1", "s2", "S3", "s2 s1", "s1 s3", "S2 s3", "s2 s2", "s3 S2 s1", "s1 s2 s3"];
        let mut checked = 0;
        for a in &seeds {
            for b in &seeds {
                for wd in &words {
                    let b2 = w(wd).apply(b).unwrap();
                    let total = a.crossings().len() + b2.crossings().len();
                    if a == &b2 || total > 9 {
                        continue;
                    }
                    assert_eq!(intersection_number(a, &b2), brute_force(a, &b2), "{a} vs {b2}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 40, "only {checked} pairs checked");
    }

    #[test]
    fn curve_wrapping_inside_a_stretch() {
        // y runs once around all of x inside one parallel stretch
        let x = curve(5, 2, 3);
        let y = w("S2 S2 s3").apply(&curve(5, 1, 3)).unwrap();
        assert_eq!(brute_force(&x, &y), 2);
        assert_eq!(intersection_number(&x, &y), 2);
        assert_eq!(intersection_number(&y, &x), 2);
    }

    #[test]
    fn system_is_embedded() {
        let a = arc(5, 1, 2);
        let b = w("s2 s2 s1 S3").apply(&a).unwrap();
        let c = w("S3 s4").apply(&curve(5, 2, 3)).unwrap();
        let cfg = Configuration::new(&[a, b, c]).unwrap();
        for x in cfg.crossings() {
            assert_ne!(x.a.0, x.b.0, "self crossing {x:?}");
        }
    }

    #[test]
    fn mismatched_disks() {
        assert_eq!(Configuration::new(&[arc(4, 1, 2), arc(5, 1, 2)]).err(), Some(Error::DiskMismatch(4, 5)));
    }
}

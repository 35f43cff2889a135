//! Components of the disk cut along a system of classes.
//!
//! The system is drawn in minimal position: every chord becomes a semicircle
//! over the integer layout of the axis, crossings are computed exactly, and
//! the resulting plane graph (system pieces, axis pieces and the boundary
//! circle) is traced face by face from its rotation system. Faces glued along
//! axis pieces or along the boundary collar belong to the same component of
//! the complement of the system.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::class::{Class, Half};
use super::config::{crossing_abscissa, Configuration, Layout, Node, Ratio};
use super::disk::PuncturedDisk;
use crate::error::{Error, Result};

/// One component of the complement of the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Punctures lying inside the component.
    pub interior: Vec<u8>,
    /// Arc endpoints on the closure of the component.
    pub corners: Vec<u8>,
    /// Whether the component contains the collar of the outer boundary.
    pub infinity: bool,
    /// System pieces on the frontier, as (class index, chord index).
    pub pieces: Vec<(usize, usize)>,
}

impl Component {
    /// Punctures on the closure, interior or corner.
    pub fn closure_punctures(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self.interior.iter().chain(&self.corners).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn marked_count(&self, disk: &PuncturedDisk) -> usize {
        self.closure_punctures().iter().filter(|&&p| disk.is_marked(p)).count()
    }

    /// Indices of the blocks meeting the closure of the component.
    pub fn block_incidences(&self, disk: &PuncturedDisk) -> Vec<usize> {
        let mut v: Vec<usize> = self.closure_punctures().iter().filter_map(|&p| disk.block_of(p)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// A hole of a component: a complementary region beyond one of its frontier
/// circles, an interior puncture, or the outer boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    pub punctures: Vec<u8>,
    pub infinity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeKind {
    Axis,
    Boundary,
    System(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VertexKind {
    End,
    Puncture(u8),
    Point,
    Crossing,
}

#[derive(Debug, Clone)]
pub struct Complement {
    pub components: Vec<Component>,
    face_comp: Vec<usize>,
    // per undirected edge: kind, endpoints, faces on the two sides
    edges: Vec<(EdgeKind, usize, usize, usize, usize)>,
    vertex_kind: Vec<VertexKind>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nx = self.0[y];
            self.0[y] = r;
            y = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Order of `1 / d1` against `1 / d2` for nonzero integers.
fn cmp_inverse(d1: i64, d2: i64) -> Ordering {
    match (d1 > 0, d2 > 0) {
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => d2.cmp(&d1),
    }
}

struct Graph {
    vertex_kind: Vec<VertexKind>,
    // half-edge h and h ^ 1 are twins; half-edge 2e runs from edges[e].1 to edges[e].2
    edges: Vec<(EdgeKind, usize, usize)>,
    rotation: Vec<Vec<usize>>,
}

impl Graph {
    fn add_vertex(&mut self, k: VertexKind) -> usize {
        self.vertex_kind.push(k);
        self.rotation.push(Vec::new());
        self.vertex_kind.len() - 1
    }

    fn add_edge(&mut self, kind: EdgeKind, from: usize, to: usize) -> usize {
        self.edges.push((kind, from, to));
        2 * (self.edges.len() - 1)
    }

    fn head(&self, h: usize) -> usize {
        let (_, a, b) = self.edges[h / 2];
        if h % 2 == 0 {
            b
        } else {
            a
        }
    }
}

fn perturbed(layout: &Layout, attempt: u64) -> Layout {
    if attempt == 0 {
        return layout.clone();
    }
    // keep the order, break accidental concurrencies
    let scale = 1024i64;
    let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ attempt;
    let mut jitter = |x: i64| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        x * scale + ((state >> 33) % (scale as u64 / 2)) as i64
    };
    let point_x = layout.point_x.iter().map(|v| v.iter().map(|&x| jitter(x)).collect()).collect();
    let puncture_x = layout.puncture_x.iter().map(|&x| jitter(x)).collect();
    Layout { point_x, puncture_x, right_end: layout.right_end * scale }
}

/// Components of the complement of a system of pairwise distinct classes.
pub fn complement_analysis(system: &[Class]) -> Result<Complement> {
    let cfg = Configuration::new(system)?;
    let base = cfg.layout();
    for attempt in 0..8 {
        if let Some(c) = analyse(&cfg, &perturbed(&base, attempt))? {
            return Ok(c);
        }
    }
    Err(Error::Degenerate("could not separate concurrent crossings".into()))
}

fn analyse(cfg: &Configuration, layout: &Layout) -> Result<Option<Complement>> {
    let n = cfg.n();
    let mut g = Graph { vertex_kind: Vec::new(), edges: Vec::new(), rotation: Vec::new() };
    let inf_l = g.add_vertex(VertexKind::End);
    let inf_r = g.add_vertex(VertexKind::End);

    // axis vertices in left-to-right order
    let mut axis: Vec<(i64, usize)> = Vec::new();
    let mut puncture_v = vec![usize::MAX; n + 1];
    for k in 1..=n as u8 {
        let v = g.add_vertex(VertexKind::Puncture(k));
        puncture_v[k as usize] = v;
        axis.push((layout.puncture_x[k as usize], v));
    }
    let mut point_v: Vec<Vec<usize>> = Vec::new();
    for xs in &layout.point_x {
        let mut row = Vec::with_capacity(xs.len());
        for &x in xs {
            let v = g.add_vertex(VertexKind::Point);
            row.push(v);
            axis.push((x, v));
        }
        point_v.push(row);
    }
    axis.sort();
    let node_v = |ci: usize, node: Node| match node {
        Node::Puncture(k) => puncture_v[k as usize],
        Node::Point(i) => point_v[ci][i],
    };

    // chords as semicircles over [l, r]
    struct Semi {
        half: Half,
        l: i64,
        r: i64,
        vl: usize,
        vr: usize,
        id: (usize, usize),
        cuts: Vec<(Ratio, usize)>,
        first: usize,
        last: usize,
    }
    let mut semis: Vec<Semi> = Vec::new();
    let mut semi_index: Vec<Vec<usize>> = Vec::new();
    for ci in 0..cfg.classes().len() {
        let mut row = Vec::new();
        for (t, ch) in cfg.chords(ci).iter().enumerate() {
            let (xa, xb) = (layout.x(ci, ch.from), layout.x(ci, ch.to));
            let (va, vb) = (node_v(ci, ch.from), node_v(ci, ch.to));
            let (l, r, vl, vr) = if xa < xb { (xa, xb, va, vb) } else { (xb, xa, vb, va) };
            row.push(semis.len());
            semis.push(Semi { half: ch.half, l, r, vl, vr, id: (ci, t), cuts: Vec::new(), first: 0, last: 0 });
        }
        semi_index.push(row);
    }

    // crossing vertices; rotation entries are filled in once edges exist
    let mut crossings: Vec<(usize, usize, usize)> = Vec::new();
    for x in cfg.crossings() {
        let (mut c, mut d) = (semi_index[x.a.0][x.a.1], semi_index[x.b.0][x.b.1]);
        if semis[c].l > semis[d].l {
            std::mem::swap(&mut c, &mut d);
        }
        let at = crossing_abscissa((semis[c].l, semis[c].r), (semis[d].l, semis[d].r));
        let v = g.add_vertex(VertexKind::Crossing);
        semis[c].cuts.push((at, v));
        semis[d].cuts.push((at, v));
        crossings.push((v, c, d));
    }
    for s in &mut semis {
        s.cuts.sort_by(|a, b| a.0.cmp(b.0));
        if s.cuts.windows(2).any(|w| w[0].0.cmp(w[1].0) == Ordering::Equal) {
            return Ok(None);
        }
    }

    // system edges along each semicircle, left to right; remember the
    // half-edges leaving each crossing vertex
    let mut at_crossing: std::collections::HashMap<(usize, usize), (usize, usize)> = std::collections::HashMap::new();
    for (si, s) in semis.iter_mut().enumerate() {
        let mut chain = vec![s.vl];
        chain.extend(s.cuts.iter().map(|c| c.1));
        chain.push(s.vr);
        let mut hs = Vec::with_capacity(chain.len() - 1);
        for w in chain.windows(2) {
            hs.push(g.add_edge(EdgeKind::System(s.id.0, s.id.1), w[0], w[1]));
        }
        s.first = hs[0];
        s.last = hs[hs.len() - 1] ^ 1;
        for (i, &(_, v)) in s.cuts.iter().enumerate() {
            // (toward left end, toward right end)
            at_crossing.insert((v, si), (hs[i] ^ 1, hs[i + 1]));
        }
    }

    // axis and boundary
    let mut axis_right = vec![usize::MAX; g.vertex_kind.len()];
    let mut axis_left = vec![usize::MAX; g.vertex_kind.len()];
    let chain: Vec<usize> =
        std::iter::once(inf_l).chain(axis.iter().map(|a| a.1)).chain(std::iter::once(inf_r)).collect();
    for w in chain.windows(2) {
        let h = g.add_edge(EdgeKind::Axis, w[0], w[1]);
        axis_right[w[0]] = h;
        axis_left[w[1]] = h ^ 1;
    }
    let upper = g.add_edge(EdgeKind::Boundary, inf_l, inf_r);
    let lower = g.add_edge(EdgeKind::Boundary, inf_l, inf_r);

    // rotations, counterclockwise
    g.rotation[inf_l] = vec![axis_right[inf_l], upper, lower];
    g.rotation[inf_r] = vec![upper ^ 1, axis_left[inf_r], lower ^ 1];
    let mut ends: Vec<Vec<(Half, i64, usize)>> = vec![Vec::new(); g.vertex_kind.len()];
    for s in &semis {
        ends[s.vl].push((s.half, s.r - s.l, s.first));
        ends[s.vr].push((s.half, s.l - s.r, s.last));
    }
    for &(_, v) in &axis {
        let mut up: Vec<(i64, usize)> = ends[v].iter().filter(|e| e.0 == Half::Upper).map(|e| (e.1, e.2)).collect();
        let mut down: Vec<(i64, usize)> = ends[v].iter().filter(|e| e.0 == Half::Lower).map(|e| (e.1, e.2)).collect();
        up.sort_by(|a, b| cmp_inverse(b.0, a.0));
        down.sort_by(|a, b| cmp_inverse(a.0, b.0));
        let mut rot = vec![axis_right[v]];
        rot.extend(up.iter().map(|e| e.1));
        rot.push(axis_left[v]);
        rot.extend(down.iter().map(|e| e.1));
        g.rotation[v] = rot;
    }
    for &(v, c, d) in &crossings {
        let (c_left, c_right) = at_crossing[&(v, c)];
        let (d_left, d_right) = at_crossing[&(v, d)];
        g.rotation[v] = match semis[c].half {
            Half::Upper => vec![d_right, c_left, d_left, c_right],
            Half::Lower => vec![c_right, d_left, c_left, d_right],
        };
    }

    // faces: the face left of h continues with the clockwise neighbour of
    // twin(h) at the head of h
    let nh = 2 * g.edges.len();
    let mut pos_in_rot = vec![0usize; nh];
    let mut origin = vec![0usize; nh];
    for (v, rot) in g.rotation.iter().enumerate() {
        for (i, &h) in rot.iter().enumerate() {
            pos_in_rot[h] = i;
            origin[h] = v;
        }
    }
    for h in 0..nh {
        let (_, a, b) = g.edges[h / 2];
        let expect = if h % 2 == 0 { a } else { b };
        if origin[h] != expect || !g.rotation[expect].contains(&h) {
            return Err(Error::Degenerate("rotation system is incomplete".into()));
        }
    }
    let mut face = vec![usize::MAX; nh];
    let mut nfaces = 0;
    for start in 0..nh {
        if face[start] != usize::MAX {
            continue;
        }
        let mut h = start;
        loop {
            face[h] = nfaces;
            let v = g.head(h);
            let rot = &g.rotation[v];
            let i = pos_in_rot[h ^ 1];
            h = rot[(i + rot.len() - 1) % rot.len()];
            if h == start {
                break;
            }
            if face[h] != usize::MAX {
                return Err(Error::Degenerate("face tracing did not close".into()));
            }
        }
        nfaces += 1;
    }
    let (nv, ne) = (g.vertex_kind.len() as i64, g.edges.len() as i64);
    if nv - ne + nfaces as i64 != 2 {
        return Err(Error::Degenerate(format!("Euler check failed: V={nv} E={ne} F={nfaces}")));
    }

    let mut dsu = Dsu::new(nfaces);
    for (e, &(kind, _, _)) in g.edges.iter().enumerate() {
        match kind {
            EdgeKind::Axis | EdgeKind::Boundary => dsu.union(face[2 * e], face[2 * e + 1]),
            EdgeKind::System(..) => {}
        }
    }
    dsu.union(face[upper], face[lower]);
    let mut comp_of_root = std::collections::HashMap::new();
    let mut face_comp = vec![0usize; nfaces];
    for (f, slot) in face_comp.iter_mut().enumerate() {
        let r = dsu.find(f);
        let next = comp_of_root.len();
        *slot = *comp_of_root.entry(r).or_insert(next);
    }
    let ncomp = comp_of_root.len();
    let mut interior: Vec<BTreeSet<u8>> = vec![BTreeSet::new(); ncomp];
    let mut corners: Vec<BTreeSet<u8>> = vec![BTreeSet::new(); ncomp];
    let mut pieces: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); ncomp];
    for k in 1..=n as u8 {
        let v = puncture_v[k as usize];
        if g.rotation[v].len() == 2 {
            interior[face_comp[face[axis_right[v]]]].insert(k);
        } else {
            for &h in &g.rotation[v] {
                corners[face_comp[face[h]]].insert(k);
            }
        }
    }
    let mut edges = Vec::with_capacity(g.edges.len());
    for (e, &(kind, a, b)) in g.edges.iter().enumerate() {
        let (f1, f2) = (face[2 * e], face[2 * e + 1]);
        if let EdgeKind::System(ci, t) = kind {
            pieces[face_comp[f1]].insert((ci, t));
            pieces[face_comp[f2]].insert((ci, t));
        }
        edges.push((kind, a, b, f1, f2));
    }
    let inf_comp = face_comp[face[upper]];
    let components = (0..ncomp)
        .map(|c| Component {
            interior: interior[c].iter().copied().collect(),
            corners: corners[c].iter().copied().collect(),
            infinity: c == inf_comp,
            pieces: pieces[c].iter().copied().collect(),
        })
        .collect();
    Ok(Some(Complement { components, face_comp, edges, vertex_kind: g.vertex_kind }))
}

impl Complement {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Holes of component `d`: each interior puncture, the outer boundary if
    /// `d` reaches it, and one hole per connected piece of the rest of the
    /// sphere (other components together with system pieces and vertices).
    pub fn holes(&self, d: usize) -> Vec<Hole> {
        let comp = &self.components[d];
        let mut holes: Vec<Hole> =
            comp.interior.iter().map(|&p| Hole { punctures: vec![p], infinity: false }).collect();
        if comp.infinity {
            holes.push(Hole { punctures: Vec::new(), infinity: true });
        }
        // cells: components, then system edges, then vertices
        let nc = self.components.len();
        let ne = self.edges.len();
        let mut dsu = Dsu::new(nc + ne + self.vertex_kind.len());
        let mut used = vec![false; nc + ne + self.vertex_kind.len()];
        for (e, &(kind, a, b, f1, f2)) in self.edges.iter().enumerate() {
            if !matches!(kind, EdgeKind::System(..)) {
                continue;
            }
            let cell = nc + e;
            used[cell] = true;
            for f in [f1, f2] {
                let c = self.face_comp[f];
                if c != d {
                    used[c] = true;
                    dsu.union(cell, c);
                }
            }
            for v in [a, b] {
                used[nc + ne + v] = true;
                dsu.union(cell, nc + ne + v);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Hole> = std::collections::BTreeMap::new();
        for cell in 0..used.len() {
            if !used[cell] {
                continue;
            }
            let root = dsu.find(cell);
            let hole = groups.entry(root).or_insert(Hole { punctures: Vec::new(), infinity: false });
            if cell < nc {
                hole.punctures.extend(&self.components[cell].interior);
                hole.infinity |= self.components[cell].infinity;
            } else if cell >= nc + ne {
                if let VertexKind::Puncture(k) = self.vertex_kind[cell - nc - ne] {
                    hole.punctures.push(k);
                }
            }
        }
        for mut h in groups.into_values() {
            h.punctures.sort_unstable();
            h.punctures.dedup();
            holes.push(h);
        }
        holes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{intersection_number, ArcClass, CurveClass, Word};

    fn curve(n: usize, lo: u8, hi: u8) -> Class {
        Class::Curve(CurveClass::round(n, lo, hi).unwrap())
    }

    fn arc(n: usize, i: u8, j: u8) -> Class {
        Class::Arc(ArcClass::over(n, i, j).unwrap())
    }

    #[test]
    fn single_round_curve() {
        let c = complement_analysis(&[curve(5, 1, 2)]).unwrap();
        assert_eq!(c.len(), 2);
        let mut contents: Vec<Vec<u8>> = c.components.iter().map(|k| k.interior.clone()).collect();
        contents.sort();
        assert_eq!(contents, vec![vec![1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn two_disjoint_curves() {
        let c = complement_analysis(&[curve(5, 1, 2), curve(5, 4, 5)]).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn curves_meeting_twice() {
        // k crossing points of two curves give k + 2 components
        let (a, b) = (curve(5, 1, 2), curve(5, 2, 3));
        let k = intersection_number(&a, &b) as usize;
        let c = complement_analysis(&[a, b]).unwrap();
        assert_eq!(c.len(), k + 2);
    }

    #[test]
    fn arcs_share_a_puncture() {
        let c = complement_analysis(&[arc(5, 1, 2), arc(5, 2, 3)]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.components[0].corners, vec![1, 2, 3]);
        assert_eq!(c.components[0].interior, vec![4, 5]);
    }

    #[test]
    fn holes_of_the_middle_annulus() {
        let c = complement_analysis(&[curve(6, 1, 2), curve(6, 1, 4)]).unwrap();
        let mid = c.components.iter().position(|k| k.interior == vec![3, 4]).unwrap();
        let holes = c.holes(mid);
        assert_eq!(holes.len(), 4);
        assert!(holes.iter().any(|h| h.punctures == vec![1, 2]));
        assert!(holes.iter().any(|h| h.punctures == vec![5, 6] && h.infinity));
    }

    #[test]
    fn euler_count_for_random_curve_pairs() {
        let base = curve(6, 2, 4);
        for wd in ["s1", "s2 s3", "S4 s1 s2", "s5 s3 s3 S1", "s2 s4 s1 S3 s5"] {
            let b = wd.parse::<Word>().unwrap().apply(&base).unwrap();
            if b == base {
                continue;
            }
            let k = intersection_number(&base, &b) as usize;
            let c = complement_analysis(&[base.clone(), b]).unwrap();
            let expect = if k == 0 { 3 } else { k + 2 };
            assert_eq!(c.len(), expect, "{wd}");
        }
    }
}

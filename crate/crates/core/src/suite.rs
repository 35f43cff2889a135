//! The acceptance experiments as a library: each claim is checked at a fixed
//! size and seed, with a time budget, and reported as one row.
//!
//! Criteria 3 and 6 fail as stated; they are run in full and reported but
//! flagged [`Row::known_unattainable`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ends::{fii, named_surface, FiiResult, SurfaceDescriptor};
use crate::graphs::{
    build_word_ball, farey_distance, is_member, remark_graph, GraphKind, GraphModel, Matrix, Recipe, Slope, Vertex,
    VertexKey,
};
use crate::metric::{
    bounded_orbit_certify, decide_phi_pairs, diameter, farey_translation, guessing_check, is_connected,
    qi_bound_from_retract, qi_inequality_audit, quasi_retract_check, subset_diameter, ArcMetric, RetractOutcome,
};
use crate::planar::{
    intersection_number, ArcClass, Class, CurveClass, Fingerprint, Generator, Marks, PuncturedDisk,
    SecondaryFingerprint, Word,
};
use crate::unicorn::{a_family, slim_check, unicorn_path};
use crate::Error;

pub const KNOWN_UNATTAINABLE: [u8; 2] = [3, 6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, lens: RangeInclusive<usize>) -> Vec<Generator> {
    let gens = Generator::all(n);
    let len = rng.gen_range(lens);
    (0..len).map(|_| *gens.choose(rng).unwrap()).collect()
}

fn random_seed(rng: &mut ChaCha8Rng, n: usize) -> Class {
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(1..n as u8);
        let j = rng.gen_range(i + 1..=n as u8);
        Class::Arc(ArcClass::over(n, i, j).unwrap())
    } else {
        let lo = rng.gen_range(1..n as u8);
        let hi = rng.gen_range(lo + 1..=n as u8);
        if hi - lo + 1 == n as u8 {
            return Class::Curve(CurveClass::round(n, 1, 2).unwrap());
        }
        Class::Curve(CurveClass::round(n, lo, hi).unwrap())
    }
}

fn random_arc(rng: &mut ChaCha8Rng, n: usize, lens: RangeInclusive<usize>) -> ArcClass {
    let i = rng.gen_range(1..n as u8);
    let j = rng.gen_range(i + 1..=n as u8);
    let w = Word(random_word(rng, n, lens));
    w.apply(&Class::Arc(ArcClass::over(n, i, j).unwrap())).unwrap().as_arc().unwrap().clone()
}

/// A random arc whose endpoints satisfy `keep`.
fn arc_where(rng: &mut ChaCha8Rng, n: usize, lens: RangeInclusive<usize>, keep: impl Fn(u8, u8) -> bool) -> ArcClass {
    loop {
        let a = random_arc(rng, n, lens.clone());
        let (p, q) = a.endpoints();
        if keep(p, q) {
            return a;
        }
    }
}

fn d7_q5() -> PuncturedDisk {
    PuncturedDisk::new(7, Marks::Points(vec![1, 2, 3, 4, 5])).unwrap()
}

fn in_q(p: u8, q: u8) -> bool {
    p != q && p <= 5 && q <= 5
}

/// The 100 triples shared by criteria 4 and 10; the first 12 have all three
/// arcs on the endpoints {1, 2}.
fn slim_sample() -> Vec<(ArcClass, ArcClass, ArcClass)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let shared = |p: u8, q: u8| (p.min(q), p.max(q)) == (1, 2);
    (0..100)
        .map(|t| {
            let draw = |rng: &mut ChaCha8Rng| {
                if t < 12 {
                    arc_where(rng, 7, 6..=8, shared)
                } else {
                    arc_where(rng, 7, 6..=8, in_q)
                }
            };
            (draw(&mut rng), draw(&mut rng), draw(&mut rng))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    let want = [
        ("cantor_tree", 0),
        ("blooming_cantor_tree", 0),
        ("loch_ness", 0),
        ("plane_minus_cantor", 2),
        ("tripod", 3),
        ("spotted_loch_ness", 1),
        ("jacobs_ladder", 2),
        ("punctured_jacobs_ladder", 3),
    ];
    for (name, v) in want {
        if fii(&named_surface(name).unwrap()).unwrap() != FiiResult::Exact(v) {
            bad.push(name.to_string());
        }
    }
    let mut grid = 0;
    for alpha in 1..=4u32 {
        for n in [1u64, 2, 3, 5, 6] {
            let text = if (alpha as u64 + n) % 2 == 0 {
                format!("genus=0; ends=char({alpha}, {n}); ag=none")
            } else {
                format!("genus=inf; ends=char({alpha}, {n}); ag=all")
            };
            let d: SurfaceDescriptor = text.parse().unwrap();
            grid += 1;
            if fii(&d).unwrap() != FiiResult::Exact(n) {
                bad.push(text);
            }
        }
    }
    for g in [1, 2, 7] {
        let d: SurfaceDescriptor = format!("genus={g}; ends=cantor; ag=none").parse().unwrap();
        if fii(&d).unwrap() != FiiResult::Infinity {
            bad.push(format!("genus {g}"));
        }
    }
    outcome(bad.is_empty() && grid == 20, format!("8 catalog + {grid} grid + 3 genus cases, wrong: {bad:?}"))
}

fn criterion_2() -> Outcome {
    let n = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut braid_fail = 0;
    let mut sym_fail = 0;
    let mut inv_fail = 0;
    let mut classes = Vec::new();
    for _ in 0..500 {
        let seed = random_seed(&mut rng, n);
        let w = random_word(&mut rng, n, 0..=8);
        let i = rng.gen_range(1..n as u8 - 1);
        let (lhs, rhs) = if rng.gen_bool(0.5) {
            let (a, b) = (Generator::new(i, true), Generator::new(i + 1, true));
            (vec![a, b, a], vec![b, a, b])
        } else {
            // far-commutation: |i - j| ≥ 2
            let (i, j) = loop {
                let (i, j) = (rng.gen_range(1..n as u8), rng.gen_range(1..n as u8));
                if i.abs_diff(j) >= 2 {
                    break (i, j);
                }
            };
            let (a, b) = (Generator::new(i, rng.gen_bool(0.5)), Generator::new(j, rng.gen_bool(0.5)));
            (vec![a, b], vec![b, a])
        };
        let at = rng.gen_range(0..=w.len());
        let splice = |mid: &[Generator]| {
            let mut v = w[..at].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[at..]);
            Word(v).apply(&seed).unwrap()
        };
        let (x, y) = (splice(&lhs), splice(&rhs));
        if Fingerprint::of(&x) != Fingerprint::of(&y) {
            braid_fail += 1;
        }
        classes.push(x);
    }
    for k in 0..500 {
        let (x, y) = (&classes[k], &classes[(k * 7 + 3) % 500]);
        let ixy = intersection_number(x, y);
        if ixy != intersection_number(y, x) {
            sym_fail += 1;
        }
        for g in Generator::all(n) {
            if intersection_number(&g.apply(x).unwrap(), &g.apply(y).unwrap()) != ixy {
                inv_fail += 1;
            }
        }
    }
    let mut by_primary: BTreeMap<Fingerprint, BTreeSet<SecondaryFingerprint>> = BTreeMap::new();
    let mut by_secondary: BTreeMap<SecondaryFingerprint, BTreeSet<Fingerprint>> = BTreeMap::new();
    for x in &classes {
        let (f, s) = (Fingerprint::of(x), SecondaryFingerprint::of(x));
        by_primary.entry(f.clone()).or_default().insert(s.clone());
        by_secondary.entry(s).or_default().insert(f);
    }
    let collisions =
        by_primary.values().filter(|s| s.len() > 1).count() + by_secondary.values().filter(|s| s.len() > 1).count();
    outcome(
        braid_fail + sym_fail + inv_fail + collisions == 0,
        format!(
            "500 classes ({} distinct): braid {braid_fail}, symmetry {sym_fail}, invariance {inv_fail}, collisions {collisions}",
            by_primary.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let disk = d7_q5();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs: Vec<_> =
        (0..300).map(|_| (arc_where(&mut rng, 7, 0..=8, in_q), arc_where(&mut rng, 7, 0..=8, in_q))).collect();
    let (mut path_fail, mut count_fail, mut member_fail, mut paths) = (0, 0, 0, 0);
    for (a, b) in &pairs {
        let i = intersection_number(&Class::Arc(a.clone()), &Class::Arc(b.clone()));
        let mut short = false;
        for alpha in [a.endpoints().0, a.endpoints().1] {
            for beta in [b.endpoints().0, b.endpoints().1] {
                if alpha == beta {
                    continue;
                }
                paths += 1;
                match unicorn_path(a, alpha, b, beta) {
                    Err(_) => path_fail += 1,
                    Ok(p) => {
                        if p.len() != i as usize + 2 {
                            short = true;
                        }
                        let interior = &p[1..p.len() - 1];
                        if interior.iter().any(|c| !is_member(GraphKind::A2, &Class::Arc(c.clone()), &disk).unwrap()) {
                            member_fail += 1;
                        }
                    }
                }
            }
        }
        count_fail += usize::from(short);
    }
    outcome(
        path_fail + count_fail + member_fail == 0,
        format!("300 pairs, {paths} paths: not a path {path_fail}, count ≠ i+2 in {count_fail} pairs, outside A₂ {member_fail}"),
    )
}

fn criterion_4() -> Outcome {
    let disk = d7_q5();
    let sample = slim_sample();
    let shared =
        sample.iter().filter(|(a, b, d)| a.endpoints() == b.endpoints() && b.endpoints() == d.endpoints()).count();
    let fails: Vec<usize> = sample
        .par_iter()
        .enumerate()
        .filter(|(_, (a, b, d))| !slim_check(a, b, d, &disk).unwrap())
        .map(|(k, _)| k)
        .collect();
    let sizes: Vec<usize> = sample.iter().map(|(a, b, _)| a_family(a, b).unwrap().len()).collect();
    let crossing: usize = sample
        .iter()
        .filter(|(a, b, _)| intersection_number(&Class::Arc(a.clone()), &Class::Arc(b.clone())) > 0)
        .count();
    outcome(
        fails.is_empty() && shared >= 10,
        format!(
            "100 triples ({shared} with a common boundary, {crossing} with a ∩ b ≠ ∅, largest A(a, b) {}), failing {fails:?}",
            sizes.iter().max().unwrap()
        ),
    )
}

fn criterion_5() -> Outcome {
    let disk = d7_q5();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pinned = (ArcClass::over(7, 1, 2).unwrap(), ArcClass::over(7, 2, 3).unwrap());
    let mut pairs = vec![pinned];
    while pairs.len() < 400 {
        pairs.push((arc_where(&mut rng, 7, 0..=4, in_q), arc_where(&mut rng, 7, 0..=4, in_q)));
    }
    let decided_all = decide_phi_pairs(&pairs, &disk).unwrap();
    let pin = decided_all[0].map(|(x, y)| (x.as_u8(), y.as_u8()));
    let decided: Vec<_> = decided_all
        .into_iter()
        .filter(|d| d.is_some_and(|(x, y)| x.as_u8().is_some() && y.as_u8().is_some()))
        .take(200)
        .collect();
    let rep = qi_inequality_audit(&decided);
    outcome(
        decided.len() == 200 && rep.violations.is_empty() && pin == Some((Some(1), Some(2))),
        format!(
            "{} decided pairs, {} checked, violations {}, pinned {:?}",
            decided.len(),
            rep.checked,
            rep.violations.len(),
            pin
        ),
    )
}

fn criterion_6() -> Outcome {
    let singles = PuncturedDisk::new(8, Marks::Blocks((1..=8).map(|p| vec![p]).collect())).unwrap();
    let seed = Class::Curve(CurveClass::round(8, 1, 2).unwrap());
    let g = build_word_ball(GraphKind::Sep2, &singles, &[seed], 4).unwrap();
    let classes: Vec<Class> = g.vertices.iter().map(vertex_class).collect();
    let members = classes.iter().all(|c| is_member(GraphKind::Sep2, c, &singles).unwrap());
    let connected = is_connected(&g);
    let comps = crate::metric::components(&g).into_iter().max().map_or(0, |c| c + 1);

    let blocks = PuncturedDisk::new(8, Marks::Blocks(vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]])).unwrap();
    let seed = Class::Curve(CurveClass::round(8, 1, 4).unwrap());
    let h = build_word_ball(GraphKind::Sep2, &blocks, &[seed], 4).unwrap();
    let hc: Vec<Class> = h.vertices.iter().map(vertex_class).collect();
    let twice = h.edges.iter().filter(|&&(u, v)| intersection_number(&hc[u], &hc[v]) == 2).count();
    outcome(
        connected && members && twice >= 1,
        format!(
            "singletons: {} vertices in {comps} components, members {members}; four blocks: {} edges, {twice} with i = 2",
            g.len(),
            h.edges.len()
        ),
    )
}

fn vertex_class(v: &Vertex) -> Class {
    match &v.key {
        VertexKey::Class(r) => r.to_class().unwrap(),
        k => panic!("not a class vertex: {k:?}"),
    }
}

/// All reduced slopes with `|p|, |q| ≤ r`.
fn slope_box(r: i64) -> Vec<Slope> {
    let mut out = BTreeSet::new();
    for q in 0..=r {
        for p in -r..=r {
            if let Ok(s) = Slope::new(p, q) {
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

fn criterion_7() -> Outcome {
    // Oracle: BFS over exact adjacency |ps − qr| = 1 inside the box of radius 80.
    let big = slope_box(80);
    let index: BTreeMap<Slope, usize> = big.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let adj: Vec<Vec<usize>> = big
        .par_iter()
        .map(|s| (0..big.len()).filter(|&j| (s.p() * big[j].q() - s.q() * big[j].p()).abs() == 1).collect())
        .collect();
    let small = slope_box(40);
    let mismatches: usize = small
        .par_iter()
        .map(|&s| {
            let mut dist = vec![u32::MAX; big.len()];
            let start = index[&s];
            dist[start] = 0;
            let mut q = VecDeque::from([start]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            small.iter().filter(|&&t| farey_distance(s, t) != dist[index[&t]]).count()
        })
        .sum();
    let growth = farey_translation(&Matrix::ANOSOV, Slope::INFINITY, 10).unwrap();
    let monotone = growth.distances.windows(2).all(|w| w[0] <= w[1]);
    let linear = growth.distances.iter().enumerate().all(|(k, &d)| 4 * d as usize >= k);
    outcome(
        mismatches == 0 && monotone && linear,
        format!(
            "{} slopes, {} pairs, mismatches {mismatches}; Aᵏ distances {:?}",
            small.len(),
            small.len().pow(2),
            growth.distances
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for m in 2..=10 {
        for w in [1, 3, 5] {
            let g = remark_graph(m, w).unwrap();
            if diameter(&g).unwrap() != m as u32 - 1 {
                bad.push(format!("diameter m={m} w={w}"));
            }
            for layer in 0..m {
                if subset_diameter(&g, &g.with_label(&format!("layer{layer}"))).unwrap() > 2 {
                    bad.push(format!("orbit m={m} w={w} layer={layer}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("m = 2..10, w ∈ {{1, 3, 5}}, wrong: {bad:?}"))
}

fn criterion_9() -> Outcome {
    let g = remark_graph(6, 4).unwrap();
    let mut layers_ok = true;
    for layer in 0..6 {
        let rep = bounded_orbit_certify(&g, &format!("layer{layer}"), |x, y| g.has_edge(x, y)).unwrap();
        layers_ok &= rep.bound == 2 && rep.a == 1 && rep.observed_diameter <= rep.bound;
    }
    let labels = ["o", "o", "o", "x"];
    let vertices = labels
        .iter()
        .enumerate()
        .map(|(i, l)| Vertex { key: VertexKey::Layer { layer: 0, index: i }, label: Some(l.to_string()) })
        .collect();
    let recipe = Recipe { builder: "violator".into(), params: BTreeMap::new() };
    let bad = GraphModel::new(GraphKind::Layers, recipe, vertices, vec![(0, 1), (0, 3), (3, 2)], None).unwrap();
    let r = bounded_orbit_certify(&bad, "o", |x, y| bad.has_edge(x, y));
    let witnessed = matches!(r, Err(Error::Condition2Fail(0, 2)));
    outcome(layers_ok && witnessed, format!("6 layers certified with bound 2: {layers_ok}; violator: {r:?}"))
}

fn criterion_10() -> Outcome {
    let mut retract_ok = true;
    for (m, w) in [(5, 3), (2, 1), (8, 2)] {
        let g = remark_graph(m, w).unwrap();
        let all: Vec<usize> = (0..g.len()).collect();
        let r = quasi_retract_check(&g, &all, |v| vec![v]).unwrap();
        retract_ok &= matches!(r, RetractOutcome::Constants { a: 0, b } if b <= 1);
    }
    let bound = qi_bound_from_retract(2, 2);
    let disk = d7_q5();
    let sample = slim_sample();
    let mut vertices: Vec<ArcClass> = Vec::new();
    let id = |c: &ArcClass, vs: &mut Vec<ArcClass>| match vs.iter().position(|v| v == c) {
        Some(i) => i,
        None => {
            vs.push(c.clone());
            vs.len() - 1
        }
    };
    let mut triples = Vec::new();
    for (a, b, d) in &sample {
        triples.push((id(a, &mut vertices), id(b, &mut vertices), id(d, &mut vertices)));
    }
    let pairs: Vec<(usize, usize)> = triples.iter().flat_map(|&(a, b, d)| [(a, b), (a, d), (d, b)]).collect();
    let classes: Vec<Class> = vertices.iter().cloned().map(Class::Arc).collect();
    let metric = ArcMetric { disk };
    let family =
        |x: &Class, y: &Class| a_family(x.as_arc()?, y.as_arc()?).ok().map(|v| v.into_iter().map(Class::Arc).collect());
    let rep = guessing_check(&metric, &classes, &pairs, &triples, family, 2).unwrap();
    outcome(
        retract_ok && bound == 6 && rep.passed(),
        format!(
            "identity retract (0, ≤1): {retract_ok}; qi bound {bound}; guessing M=2: {} pairs, {} triples, violation {:?}",
            rep.pairs_checked, rep.triples_checked, rep.violation
        ),
    )
}

/// One criterion's result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub criterion: u8,
    pub claim: String,
    /// Passed its check within the time budget.
    pub pass: bool,
    pub known_unattainable: bool,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub detail: String,
}

impl Row {
    /// Fails and is not one of the documented unattainable criteria.
    pub fn gating_failure(&self) -> bool {
        !self.pass && !self.known_unattainable
    }
}

type Check = fn() -> Outcome;

const CRITERIA: [(u8, &str, u64, Check); 10] = [
    (1, "finite-invariance index of the catalog, the char-space grid and finite genus", 1, criterion_1),
    (2, "engine soundness on D7: braid relations, symmetric invariant intersection, fingerprints", 120, criterion_2),
    (3, "unicorn paths are paths of i + 2 vertices inside A2", 120, criterion_3),
    (4, "unicorn families are 2-slim in A2", 300, criterion_4),
    (5, "boundary map inequalities d - 2 <= d(phi a, phi b) <= 2 d", 120, criterion_5),
    (6, "Sep2 word balls are connected, with twice-intersecting edges for blocks", 300, criterion_6),
    (7, "closed-form Farey distance and linear Anosov growth", 120, criterion_7),
    (8, "layered graph has diameter m - 1 and orbits of diameter at most 2", 1, criterion_8),
    (9, "bounded orbit certifier on layers and on a violator", 1, criterion_9),
    (10, "quasi-retract constants and the guessing-geodesics check", 60, criterion_10),
];

/// Runs the selected criteria (all when `only` is empty) in order.
pub fn run(only: &[u8]) -> Vec<Row> {
    let mut rows = Vec::new();
    for (k, claim, budget, check) in CRITERIA {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let t = Instant::now();
        let o = check();
        let took = t.elapsed();
        let budget = Duration::from_secs(budget);
        rows.push(Row {
            criterion: k,
            claim: claim.to_string(),
            pass: o.pass && took <= budget,
            known_unattainable: KNOWN_UNATTAINABLE.contains(&k),
            seconds: took.as_secs_f64(),
            budget_seconds: budget.as_secs_f64(),
            detail: o.detail,
        });
    }
    rows
}

/// `criterion  k: PASS (0.12s of 1s) detail`, with a marker on known failures.
pub fn format_row(r: &Row) -> String {
    let tag = if r.pass { "PASS" } else { "FAIL" };
    let note = if !r.pass && r.known_unattainable { " [known unattainable]" } else { "" };
    format!("criterion {:>2}: {tag}{note} ({:.2}s of {}s) {}", r.criterion, r.seconds, r.budget_seconds, r.detail)
}

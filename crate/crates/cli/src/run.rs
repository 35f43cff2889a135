use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use curvegraph::ends::{
    cb_derivative, characteristic_system, classify_fii_zero, fii_explained, named_surface, EndSpace, SurfaceDescriptor,
};
use curvegraph::graphs::{
    build_word_ball, distance_leq2, farey_graph, remark_graph, GraphKind, GraphModel, Matrix, Recipe, Slope, Vertex,
    VertexKey,
};
use curvegraph::metric::{
    bfs_distances, bounded_orbit_certify, decide_phi_pairs, delta_four_point, farey_translation, putman_check,
    qi_bound_from_retract, qi_inequality_audit, quasi_retract_check, RetractOutcome,
};
use curvegraph::planar::{
    intersection_number, parse_class, ArcClass, Class, ClassRecord, CurveClass, Fingerprint, Generator, Marks,
    PuncturedDisk, Word,
};
use curvegraph::unicorn::{a_family, slim_violation, unicorn_path};
use curvegraph::{suite, Error};

use crate::cache::FingerprintCache;
use crate::{Cli, Command, Ends, Engine, Format, GraphCmd, Kind, Metric, Surface, Unicorn};

pub const ENVELOPE_SCHEMA: u32 = 1;

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    /// Unreadable or malformed input outside the library's own parsers.
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn is_internal(&self) -> bool {
        matches!(self, Failure::Internal(_) | Failure::Core(Error::NotAPath { .. } | Error::Degenerate(_)))
    }

    fn kind(&self) -> String {
        match self {
            Failure::Core(e) => {
                let name = format!("{e:?}");
                let name = name.split(['(', ' ', '{']).next().unwrap_or_default();
                let mut out = String::new();
                for (i, c) in name.chars().enumerate() {
                    if c.is_ascii_uppercase() && i > 0 {
                        out.push('_');
                    }
                    out.push(c.to_ascii_lowercase());
                }
                out
            }
            Failure::Input(_) => "input".into(),
            Failure::Internal(_) => "internal".into(),
        }
    }

    pub fn to_json(&self) -> String {
        let message = match self {
            Failure::Core(e) => e.to_string(),
            Failure::Input(m) | Failure::Internal(m) => m.clone(),
        };
        json!({ "error": { "kind": self.kind(), "message": message } }).to_string()
    }
}

type Res<T> = Result<T, Failure>;

/// What a subcommand produced: a JSON result, optionally a text rendering
/// (CSV, Markdown) preferred without `--json`, and optionally DOT.
struct Output {
    command: &'static str,
    json: Value,
    text: Option<String>,
    dot: Option<String>,
}

impl Output {
    fn new(command: &'static str, json: impl Serialize) -> Res<Self> {
        let json = serde_json::to_value(json).map_err(|e| Failure::Internal(e.to_string()))?;
        Ok(Output { command, json, text: None, dot: None })
    }
}

fn write_file(path: &Path, body: &str) -> Res<()> {
    fs::write(path, body).map_err(|e| Failure::Internal(format!("writing {}: {e}", path.display())))
}

fn emit(cli: &Cli, o: Output) -> Res<()> {
    let body = match (&o.text, cli.json) {
        (Some(t), false) => t.clone(),
        _ => {
            let v = if cli.json {
                json!({ "schema": ENVELOPE_SCHEMA, "command": o.command, "result": o.json })
            } else {
                o.json
            };
            format!("{v}\n")
        }
    };
    match (&cli.out, o.dot) {
        (Some(path), dot) => {
            write_file(path, &body)?;
            if let Some(dot) = dot {
                write_file(&path.with_extension("dot"), &dot)?;
            }
        }
        (None, Some(dot)) => print!("{dot}"),
        (None, None) => print!("{body}"),
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Res<()> {
    let out = match &cli.command {
        Command::Ends(c) => ends(c)?,
        Command::Engine(c) => engine(c)?,
        Command::Unicorn(c) => unicorn(c)?,
        Command::Graph(c) => graph(c)?,
        Command::Metric(c) => metric(c, cli.seed)?,
        Command::PaperSuite { only } => paper_suite(only)?,
    };
    emit(cli, out)
}

fn surface(s: &Surface) -> Res<SurfaceDescriptor> {
    Ok(match (&s.desc, &s.name) {
        (Some(d), _) => d.parse()?,
        (None, Some(n)) => named_surface(n)?,
        (None, None) => unreachable!("clap requires one of them"),
    })
}

fn ends(c: &Ends) -> Res<Output> {
    match c {
        Ends::Derive { ends, times } => {
            let mut e: EndSpace = ends.parse()?;
            let mut derived = Vec::with_capacity(*times);
            for _ in 0..*times {
                e = cb_derivative(&e);
                derived.push(e.to_string());
            }
            Output::new("ends derive", json!({ "ends": ends.parse::<EndSpace>()?.to_string(), "derived": derived }))
        }
        Ends::Charsys { ends } => {
            let e: EndSpace = ends.parse()?;
            Output::new("ends charsys", json!({ "char_system": characteristic_system(&e) }))
        }
        Ends::Fii { surface: s, explain } => {
            let out = fii_explained(&surface(s)?)?;
            if *explain {
                Output::new("ends fii", out)
            } else {
                Output::new("ends fii", json!({ "fii": out.fii }))
            }
        }
        Ends::Classify { surface: s } => {
            Output::new("ends classify", json!({ "class": classify_fii_zero(&surface(s)?)? }))
        }
    }
}

fn class(n: usize, text: &str) -> Res<Class> {
    Ok(parse_class(n, text)?.0)
}

fn arc(n: usize, text: &str) -> Res<ArcClass> {
    match class(n, text)? {
        Class::Arc(a) => Ok(a),
        Class::Curve(_) => Err(Failure::Input(format!("`{text}` is a curve; an arc is needed here"))),
    }
}

fn engine(c: &Engine) -> Res<Output> {
    match c {
        Engine::Intersect { n, a, b } => {
            let i = intersection_number(&class(*n, a)?, &class(*n, b)?);
            Output::new("engine intersect", json!({ "intersection": i }))
        }
        Engine::Fingerprint { n, x } => {
            let mut cache = FingerprintCache::open();
            let f = cache.get_or_insert(FingerprintCache::key(*n, x), || -> Res<Fingerprint> {
                Ok(Fingerprint::of(&class(*n, x)?))
            })?;
            let _ = cache.save();
            Output::new("engine fingerprint", json!({ "fingerprint": f }))
        }
        Engine::Apply { n, word, x } => {
            let w: Word = word.parse()?;
            let (x0, inner) = parse_class(*n, x)?;
            // w · (u · seed) = (w u) · seed
            let mut full = w.0.clone();
            full.extend(inner.map(|u| u.0).unwrap_or_default());
            let full = Word(full);
            let y = w.apply(&x0)?;
            let mut cache = FingerprintCache::open();
            let seed_text = x.rsplit('*').next().unwrap_or(x).trim();
            let f = cache.get_or_insert(FingerprintCache::key(*n, &format!("{full} * {seed_text}")), || {
                Ok::<_, Failure>(Fingerprint::of(&y))
            })?;
            let _ = cache.save();
            let mut rec = ClassRecord::new(&y, Some(&full));
            rec.fingerprint = f;
            Output::new("engine apply", json!({ "class": rec }))
        }
    }
}

/// `A(a, b)` with its disjointness edges.
fn family_graph(a: &ArcClass, b: &ArcClass, path: &[ArcClass]) -> Res<GraphModel> {
    let fam = a_family(a, b)?;
    let classes: Vec<Class> = fam.iter().cloned().map(Class::Arc).collect();
    let vertices = fam
        .iter()
        .zip(&classes)
        .map(|(c, x)| Vertex {
            key: VertexKey::Class(ClassRecord::new(x, None)),
            label: path.contains(c).then(|| "path".to_string()),
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if intersection_number(&classes[i], &classes[j]) == 0 {
                edges.push((i, j));
            }
        }
    }
    let recipe = Recipe { builder: "a_family".into(), params: BTreeMap::new() };
    Ok(GraphModel::new(GraphKind::A2, recipe, vertices, edges, None)?)
}

fn unicorn(c: &Unicorn) -> Res<Output> {
    match c {
        Unicorn::Path { n, a, b, alpha, beta, dot } => {
            let (a, b) = (arc(*n, a)?, arc(*n, b)?);
            let path = unicorn_path(&a, *alpha, &b, *beta)?;
            let i = intersection_number(&Class::Arc(a.clone()), &Class::Arc(b.clone()));
            let prints: Vec<Fingerprint> = path.iter().map(|c| Fingerprint::of(&Class::Arc(c.clone()))).collect();
            let mut o = Output::new(
                "unicorn path",
                json!({ "intersection": i, "edges": path.len().saturating_sub(1), "path": prints }),
            )?;
            if *dot {
                o.dot = Some(family_graph(&a, &b, &path)?.to_dot());
            }
            Ok(o)
        }
        Unicorn::Slim { disk: d, a, b, d: dd } => {
            let k = disk(d.n, &d.marks, &d.blocks)?;
            let (a, b, dd) = (arc(d.n, a)?, arc(d.n, b)?, arc(d.n, dd)?);
            let v = slim_violation(&a, &b, &dd, &k)?;
            let v = v.map(|c| Fingerprint::of(&Class::Arc(c)));
            Output::new("unicorn slim", json!({ "slim": v.is_none(), "violation": v }))
        }
    }
}

fn parse_blocks(n: usize, text: &str) -> Res<Vec<Vec<u8>>> {
    if text.trim() == "singletons" {
        return Ok((1..=n as u8).map(|p| vec![p]).collect());
    }
    let mut at = 0;
    let mut out = Vec::new();
    for part in text.split(';') {
        let block = part
            .split(',')
            .map(|p| p.trim().parse::<u8>())
            .collect::<Result<Vec<u8>, _>>()
            .map_err(|_| Error::Parse { at, msg: format!("bad block `{}`", part.trim()) })?;
        out.push(block);
        at += part.len() + 1;
    }
    Ok(out)
}

fn disk(n: usize, marks: &Option<Vec<u8>>, blocks: &Option<String>) -> Res<PuncturedDisk> {
    let marks = match (marks, blocks) {
        (_, Some(b)) => Marks::Blocks(parse_blocks(n, b)?),
        (Some(m), None) => Marks::Points(m.clone()),
        (None, None) => Marks::Points((1..=n as u8).collect()),
    };
    Ok(PuncturedDisk::new(n, marks)?)
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Res<T> {
    v.ok_or_else(|| Failure::Input(format!("--{flag} is required for {kind}")))
}

fn load(path: &Path) -> Res<GraphModel> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {}: {e}", path.display())))?;
    Ok(GraphModel::from_json(&text)?)
}

/// Default word-ball seed: the arc over the first two marked punctures, or
/// the round curve around the first two blocks.
fn default_seed(kind: GraphKind, k: &PuncturedDisk) -> Res<Class> {
    Ok(match kind {
        GraphKind::A2 => {
            let m = k.marked();
            if m.len() < 2 {
                return Err(Error::BadMarks("need two marked punctures".into()).into());
            }
            Class::Arc(ArcClass::over(k.n(), m[0], m[1])?)
        }
        _ => {
            let b = k.blocks();
            let pts: Vec<u8> = b.iter().take(2).flatten().copied().collect();
            let (lo, hi) = (*pts.iter().min().unwrap_or(&1), *pts.iter().max().unwrap_or(&2));
            Class::Curve(CurveClass::round(k.n(), lo, hi)?)
        }
    })
}

fn distance_csv(rows: &[(usize, Vec<Option<u32>>)], n: usize) -> String {
    let mut s = String::from("vertex");
    for v in 0..n {
        let _ = write!(s, ",{v}");
    }
    s.push('\n');
    for (u, row) in rows {
        let _ = write!(s, "{u}");
        for d in row {
            match d {
                Some(d) => {
                    let _ = write!(s, ",{d}");
                }
                None => s.push(','),
            }
        }
        s.push('\n');
    }
    s
}

fn graph_kind(k: Kind) -> GraphKind {
    match k {
        Kind::A2 => GraphKind::A2,
        Kind::Sep2 => GraphKind::Sep2,
        Kind::Farey => GraphKind::Farey,
        Kind::Layers => GraphKind::Layers,
    }
}

fn graph(c: &GraphCmd) -> Res<Output> {
    match c {
        GraphCmd::Build { kind, n, marks, blocks, radius, from, box_radius, m, w, dot } => {
            let g = match kind {
                Kind::A2 | Kind::Sep2 => {
                    let gk = graph_kind(*kind);
                    let n = need(*n, "n", "word-ball graphs")?;
                    let blocks = match (kind, marks, blocks) {
                        (Kind::Sep2, None, None) => Some("singletons".to_string()),
                        _ => blocks.clone(),
                    };
                    let k = disk(n, marks, &blocks)?;
                    let seeds = if from.is_empty() {
                        vec![default_seed(gk, &k)?]
                    } else {
                        from.iter().map(|t| class(n, t)).collect::<Res<_>>()?
                    };
                    build_word_ball(gk, &k, &seeds, *radius)?
                }
                Kind::Farey => farey_graph(*box_radius)?,
                Kind::Layers => remark_graph(*m, *w)?,
            };
            let mut o = Output::new("graph build", &g)?;
            if *dot {
                o.dot = Some(g.to_dot());
            }
            Ok(o)
        }
        GraphCmd::Export { graph, format } => {
            let g = load(graph)?;
            let mut o = Output::new("graph export", &g)?;
            o.text = match format {
                Format::Json => None,
                Format::Dot => Some(g.to_dot()),
                Format::Csv => {
                    let mut s = String::from("source,target\n");
                    for (u, v) in &g.edges {
                        let _ = writeln!(s, "{u},{v}");
                    }
                    Some(s)
                }
            };
            Ok(o)
        }
        GraphCmd::Distance { graph: Some(path), from, .. } => {
            let g = load(path)?;
            let sources: Vec<usize> = match from {
                Some(v) => vec![*v],
                None => (0..g.len()).collect(),
            };
            let rows = sources.into_iter().map(|v| Ok((v, bfs_distances(&g, v)?))).collect::<Res<Vec<_>>>()?;
            let table: Vec<&Vec<Option<u32>>> = rows.iter().map(|(_, r)| r).collect();
            let mut o = Output::new(
                "graph distance",
                json!({ "sources": rows.iter().map(|r| r.0).collect::<Vec<_>>(), "distances": table }),
            )?;
            o.text = Some(distance_csv(&rows, g.len()));
            Ok(o)
        }
        GraphCmd::Distance { graph: None, kind, n, marks, blocks, a, b, .. } => {
            let gk = graph_kind(need(*kind, "kind", "a distance decision")?);
            let n = need(*n, "n", "a distance decision")?;
            let k = disk(n, marks, blocks)?;
            let (a, b) = (a.as_deref().unwrap_or_default(), b.as_deref().unwrap_or_default());
            let d = distance_leq2(gk, &class(n, a)?, &class(n, b)?, &k)?;
            Output::new("graph distance", json!({ "distance": d }))
        }
    }
}

fn parse_matrix(text: &str) -> Res<Matrix> {
    let bad = || Failure::Core(Error::Parse { at: 0, msg: format!("expected a,b;c,d, got `{text}`") });
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match rows.as_slice() {
        [r0, r1] if r0.len() == 2 && r1.len() == 2 => Ok(Matrix([[r0[0], r0[1]], [r1[0], r1[1]]])),
        _ => Err(bad()),
    }
}

/// Random arcs with both endpoints marked: a seed arc twisted by a word of
/// length at most `len`, redrawn until the endpoints land in the marks.
fn random_marked_arc(rng: &mut ChaCha8Rng, k: &PuncturedDisk, len: usize) -> Res<ArcClass> {
    let n = k.n();
    let gens = Generator::all(n);
    for _ in 0..10_000 {
        let i = rng.gen_range(1..n as u8);
        let j = rng.gen_range(i + 1..=n as u8);
        let l = rng.gen_range(0..=len);
        let w = Word((0..l).map(|_| *gens.choose(rng).expect("n >= 3")).collect());
        if let Class::Arc(a) = w.apply(&Class::Arc(ArcClass::over(n, i, j)?))? {
            let (p, q) = a.endpoints();
            if k.is_marked(p) && k.is_marked(q) {
                return Ok(a);
            }
        }
    }
    Err(Failure::Input("could not draw arcs with marked endpoints".into()))
}

fn metric(c: &Metric, seed: u64) -> Res<Output> {
    match c {
        Metric::Delta { graph, sample } => Output::new("metric delta", delta_four_point(&load(graph)?, *sample, seed)?),
        Metric::QiAudit { disk: d, pairs, len } => {
            let k = disk(d.n, &d.marks, &d.blocks)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sample = (0..*pairs)
                .map(|_| Ok((random_marked_arc(&mut rng, &k, *len)?, random_marked_arc(&mut rng, &k, *len)?)))
                .collect::<Res<Vec<_>>>()?;
            Output::new("metric qi-audit", qi_inequality_audit(&decide_phi_pairs(&sample, &k)?))
        }
        Metric::Retract { graph, onto } => {
            let g = load(graph)?;
            let y = g.with_label(onto);
            if y.is_empty() {
                return Err(Error::UnknownName(onto.clone()).into());
            }
            let mut nearest = Vec::with_capacity(g.len());
            for v in 0..g.len() {
                let d = bfs_distances(&g, v)?;
                let best = y.iter().filter_map(|&u| d[u]).min().ok_or(Error::Disconnected)?;
                nearest.push(y.iter().copied().filter(|&u| d[u] == Some(best)).collect::<Vec<_>>());
            }
            let r = quasi_retract_check(&g, &y, |v| nearest[v].clone())?;
            let bound = match r {
                RetractOutcome::Constants { a, b } => Some(qi_bound_from_retract(a, b)),
                RetractOutcome::Fail { .. } => None,
            };
            Output::new("metric retract", json!({ "retract": r, "qi_bound": bound }))
        }
        Metric::Certify { graph, orbit } => {
            let g = load(graph)?;
            Output::new("metric certify", bounded_orbit_certify(&g, orbit, |x, y| g.has_edge(x, y))?)
        }
        Metric::Putman { graph, vertex, images, witnesses } => {
            let ok = putman_check(&load(graph)?, *vertex, images, witnesses)?;
            Output::new("metric putman", json!({ "connected": ok }))
        }
        Metric::Translation { matrix, base, k } => {
            let base: Slope = base.parse()?;
            Output::new("metric translation", farey_translation(&parse_matrix(matrix)?, base, *k)?)
        }
    }
}

fn paper_suite(only: &[u8]) -> Res<Output> {
    let rows = suite::run(only);
    let mut t = String::from("| criterion | claim | result | seconds | budget | detail |\n|---|---|---|---|---|---|\n");
    for r in &rows {
        let result = match (r.pass, r.known_unattainable) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known unattainable)",
            (false, false) => "FAIL",
        };
        let _ = writeln!(
            t,
            "| {} | {} | {result} | {:.2} | {} | {} |",
            r.criterion,
            r.claim,
            r.seconds,
            r.budget_seconds,
            r.detail.replace('|', "\\|")
        );
    }
    let mut o = Output::new("paper-suite", &rows)?;
    o.text = Some(t);
    Ok(o)
}

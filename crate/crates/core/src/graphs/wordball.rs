//! Finite balls of a mapping class orbit, with the graph they induce.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::distance::sep2_uses_twice_rule;
use super::{GraphKind, GraphModel, Recipe, Vertex, VertexKey};
use crate::error::{Error, Result};
use crate::planar::{intersection_number, is_sep2_vertex, Class, ClassRecord, Generator, PuncturedDisk, Word};

/// Whether `x` is a vertex of the graph of the given kind on `disk`.
pub fn is_member(kind: GraphKind, x: &Class, disk: &PuncturedDisk) -> Result<bool> {
    if x.n() != disk.n() {
        return Ok(false);
    }
    match kind {
        GraphKind::A2 => Ok(match x {
            Class::Arc(a) => {
                let (p, q) = a.endpoints();
                p != q && disk.is_marked(p) && disk.is_marked(q)
            }
            Class::Curve(_) => false,
        }),
        GraphKind::Sep2 => Ok(match x {
            Class::Curve(c) => is_sep2_vertex(c, disk),
            Class::Arc(_) => false,
        }),
        _ => Err(Error::KindMismatch),
    }
}

/// All classes `g·s` for seeds `s` and generator words `g` of length at most
/// `radius`, kept when they are vertices, with the induced edges.
///
/// The walk passes through non-members, so a member is kept even when every
/// short word reaching it leaves the vertex set on the way. Each vertex
/// records a shortest word reaching it and is labelled by the first seed
/// whose ball contains it.
pub fn build_word_ball(kind: GraphKind, disk: &PuncturedDisk, seeds: &[Class], radius: usize) -> Result<GraphModel> {
    if seeds.is_empty() {
        return Err(Error::EmptySeed);
    }
    let mut bad = Vec::new();
    for (i, s) in seeds.iter().enumerate() {
        if !is_member(kind, s, disk)? {
            bad.push(i);
        }
    }
    if !bad.is_empty() {
        return Err(Error::MembershipFail(bad));
    }
    let gens = Generator::all(disk.n());
    let mut found: Vec<(Class, Word, usize)> = Vec::new();
    let mut index: HashMap<Class, usize> = HashMap::new();
    let mut frontier: Vec<usize> = Vec::new();
    for (si, s) in seeds.iter().enumerate() {
        if !index.contains_key(s) {
            index.insert(s.clone(), found.len());
            frontier.push(found.len());
            found.push((s.clone(), Word::empty(), si));
        }
    }
    for _ in 0..radius {
        let images: Vec<Vec<Result<Class>>> =
            frontier.par_iter().map(|&f| gens.iter().map(|g| g.apply(&found[f].0)).collect()).collect();
        let mut next = Vec::new();
        for (&f, imgs) in frontier.iter().zip(images) {
            for (g, y) in gens.iter().zip(imgs) {
                let y = y?;
                if index.contains_key(&y) {
                    continue;
                }
                let word = found[f].1.then(*g);
                let orbit = found[f].2;
                index.insert(y.clone(), found.len());
                next.push(found.len());
                found.push((y, word, orbit));
            }
        }
        frontier = next;
    }
    let mut members = Vec::new();
    for (x, w, o) in found {
        if is_member(kind, &x, disk)? {
            members.push((x, w, o));
        }
    }
    let twice = kind == GraphKind::Sep2 && sep2_uses_twice_rule(disk);
    let limit = if twice { 2 } else { 0 };
    let edges: Vec<(usize, usize)> = (0..members.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let members = &members;
            (i + 1..members.len())
                .filter(move |&j| intersection_number(&members[i].0, &members[j].0) <= limit)
                .map(move |j| (i, j))
        })
        .collect();
    let vertices = members
        .iter()
        .map(|(x, w, o)| Vertex {
            key: VertexKey::Class(ClassRecord::new(x, Some(w))),
            label: Some(format!("orbit{o}")),
        })
        .collect();
    let mut params = BTreeMap::new();
    params.insert("n".into(), serde_json::json!(disk.n()));
    params.insert("marks".into(), serde_json::to_value(disk.marks()).unwrap_or_default());
    params.insert("radius".into(), serde_json::json!(radius));
    params
        .insert("seeds".into(), serde_json::json!(seeds.iter().map(|s| ClassRecord::new(s, None)).collect::<Vec<_>>()));
    params.insert("adjacency".into(), serde_json::json!(format!("i <= {limit}")));
    let caveat = "finite induced subgraph: distances here bound the true distances from above";
    GraphModel::new(kind, Recipe { builder: "word_ball".into(), params }, vertices, edges, Some(caveat.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{ArcClass, CurveClass, Marks};

    #[test]
    fn radius_zero_is_the_seed_set() {
        let disk = PuncturedDisk::all_marked(5).unwrap();
        let seeds = [Class::Arc(ArcClass::over(5, 1, 2).unwrap()), Class::Arc(ArcClass::over(5, 3, 4).unwrap())];
        let g = build_word_ball(GraphKind::A2, &disk, &seeds, 0).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edges, vec![(0, 1)]);
    }

    #[test]
    fn empty_and_bad_seeds() {
        let disk = PuncturedDisk::new(5, Marks::Points(vec![1, 2, 3])).unwrap();
        assert_eq!(build_word_ball(GraphKind::A2, &disk, &[], 1), Err(Error::EmptySeed));
        let off = Class::Arc(ArcClass::over(5, 4, 5).unwrap());
        let on = Class::Arc(ArcClass::over(5, 1, 2).unwrap());
        assert_eq!(build_word_ball(GraphKind::A2, &disk, &[on, off], 1), Err(Error::MembershipFail(vec![1])));
        let c = Class::Curve(CurveClass::round(5, 1, 2).unwrap());
        assert_eq!(build_word_ball(GraphKind::A2, &disk, &[c], 1), Err(Error::MembershipFail(vec![0])));
    }

    #[test]
    fn every_vertex_is_reached_by_its_word() {
        let disk = PuncturedDisk::all_marked(4).unwrap();
        let s = Class::Arc(ArcClass::over(4, 1, 2).unwrap());
        let g = build_word_ball(GraphKind::A2, &disk, &[s.clone()], 2).unwrap();
        for v in &g.vertices {
            let VertexKey::Class(rec) = &v.key else { panic!() };
            let w: Word = rec.word.as_deref().unwrap().parse().unwrap();
            assert_eq!(w.apply(&s).unwrap(), rec.to_class().unwrap());
            assert!(w.len() <= 2);
        }
    }
}

//! Finite models of the graphs under study, and exact small-distance
//! decisions for the arc and separating-curve graphs.

mod distance;
mod farey;
mod remark;
mod wordball;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use distance::{distance_leq2, sep2_uses_twice_rule, Distance};
pub use farey::{farey_adjacent, farey_apply, farey_distance, farey_geodesic, farey_graph, Matrix, Slope};
pub use remark::remark_graph;
pub use wordball::{build_word_ball, is_member};

use crate::error::{Error, Result};
use crate::planar::ClassRecord;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// Arcs with distinct endpoints in the marked set; edges = disjointness.
    A2,
    /// Separating curves splitting the blocks with at least two on each side.
    Sep2,
    /// Slopes on the once-punctured torus; edges = one intersection.
    Farey,
    /// Layered graph with edges between layers at most one apart.
    Layers,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKey {
    Class(ClassRecord),
    Slope(Slope),
    Layer { layer: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub key: VertexKey,
    /// Orbit or layer label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recipe {
    pub builder: String,
    pub params: BTreeMap<String, serde_json::Value>,
}

/// A finite vertex/edge store. Edges are kept as sorted index pairs `u < v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphModel {
    pub schema: u32,
    pub kind: GraphKind,
    pub recipe: Recipe,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    /// What distances in the model mean for the infinite graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

impl GraphModel {
    pub fn new(
        kind: GraphKind,
        recipe: Recipe,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        caveat: Option<String>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(&v.key, i).is_some() {
                return Err(Error::Degenerate(format!("duplicate vertex key at {i}")));
            }
        }
        let mut m = GraphModel {
            schema: SCHEMA_VERSION,
            kind,
            recipe,
            vertices,
            edges: Vec::new(),
            caveat,
            adjacency: Vec::new(),
        };
        let mut es: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= m.vertices.len() || v >= m.vertices.len() {
                return Err(Error::UnknownVertex(u.max(v)));
            }
            if u != v {
                es.push((u.min(v), u.max(v)));
            }
        }
        es.sort_unstable();
        es.dedup();
        m.edges = es;
        m.rebuild();
        Ok(m)
    }

    /// Restores the adjacency index after deserialization.
    pub fn rebuild(&mut self) {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        self.adjacency = adj;
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut m: GraphModel =
            serde_json::from_str(text).map_err(|e| Error::Parse { at: e.column(), msg: e.to_string() })?;
        m.rebuild();
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.vertices[v].label.as_deref()
    }

    /// Vertices carrying `label`, in index order.
    pub fn with_label(&self, label: &str) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.label(v) == Some(label)).collect()
    }

    /// The subgraph induced on `keep`, vertices renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> Result<GraphModel> {
        let mut index = HashMap::new();
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.len() {
                return Err(Error::UnknownVertex(v));
            }
            index.insert(v, i);
        }
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self.edges.iter().filter_map(|&(u, v)| Some((*index.get(&u)?, *index.get(&v)?))).collect();
        let mut recipe = self.recipe.clone();
        recipe.params.insert("induced_on".into(), serde_json::json!(keep));
        GraphModel::new(self.kind, recipe, vertices, edges, self.caveat.clone())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let name = match &v.key {
                VertexKey::Class(r) => match &r.word {
                    Some(w) if !w.is_empty() => w.clone(),
                    _ => format!("v{i}"),
                },
                VertexKey::Slope(sl) => format!("{}/{}", sl.p(), sl.q()),
                VertexKey::Layer { layer, index } => format!("L{layer}.{index}"),
            };
            let _ = writeln!(s, "  {i} [label=\"{}\"];", name.replace('"', "'"));
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_keeps_adjacency() {
        let g = remark_graph(3, 2).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back = GraphModel::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.neighbors(0), g.neighbors(0));
    }

    #[test]
    fn dot_output_lists_every_edge() {
        let g = remark_graph(2, 2).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), g.edges.len());
    }
}

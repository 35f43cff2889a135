use std::collections::BTreeMap;

use super::{GraphKind, GraphModel, Recipe, Vertex, VertexKey};
use crate::error::{Error, Result};

/// `m` layers of `w` vertices; two vertices are adjacent iff their layers
/// differ by at most one. Layer `i` is labelled `layer{i}`.
pub fn remark_graph(m: usize, w: usize) -> Result<GraphModel> {
    if m == 0 || w == 0 {
        return Err(Error::Degenerate(format!("remark graph needs m, w >= 1, got {m}, {w}")));
    }
    let id = |layer: usize, index: usize| layer * w + index;
    let mut vertices = Vec::with_capacity(m * w);
    for layer in 0..m {
        for index in 0..w {
            vertices.push(Vertex { key: VertexKey::Layer { layer, index }, label: Some(format!("layer{layer}")) });
        }
    }
    let mut edges = Vec::new();
    for la in 0..m {
        for lb in la..m.min(la + 2) {
            for ia in 0..w {
                for ib in 0..w {
                    let (u, v) = (id(la, ia), id(lb, ib));
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    let mut params = BTreeMap::new();
    params.insert("layers".into(), serde_json::json!(m));
    params.insert("width".into(), serde_json::json!(w));
    GraphModel::new(GraphKind::Layers, Recipe { builder: "remark_graph".into(), params }, vertices, edges, None)
}

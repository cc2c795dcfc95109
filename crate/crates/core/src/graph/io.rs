//! The JSON graph file format and DOT export.
//!
//! ```json
//! {
//!   "vertices": ["u", "v"],
//!   "edges": [{"id": "e", "ends": ["u", "v"], "length": "3/2"}]
//! }
//! ```
//!
//! A missing `length` means `"1"`. A loop repeats its vertex in `ends`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{MetricMultigraph, MultiGraph};
use crate::error::Result;
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<String>,
}

impl GraphFile {
    pub fn from_metric(m: &MetricMultigraph) -> Self {
        let g = m.graph();
        let edges = g
            .edges()
            .iter()
            .zip(m.lengths())
            .map(|(e, len)| EdgeRecord {
                id: e.id.clone(),
                ends: [
                    g.vertex_name(e.ends.0).to_string(),
                    g.vertex_name(e.ends.1).to_string(),
                ],
                length: Some(format_rational(len)),
            })
            .collect();
        GraphFile {
            vertices: g.vertex_names().to_vec(),
            edges,
        }
    }

    pub fn to_metric(&self) -> Result<MetricMultigraph> {
        let graph = MultiGraph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone())),
        )?;
        let lengths = self
            .edges
            .iter()
            .map(|e| parse_rational(e.length.as_deref().unwrap_or("1")))
            .collect::<Result<Vec<_>>>()?;
        MetricMultigraph::new(graph, lengths)
    }
}

/// Parses a graph file. Structural errors (unknown endpoint, duplicate id,
/// non-positive length, disconnected graph) are reported after JSON errors,
/// which carry line and column.
pub fn parse_graph(text: &str) -> Result<MetricMultigraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    file.to_metric()
}

/// Pretty-printed JSON with a trailing newline. Every edge carries its
/// length explicitly.
pub fn graph_to_json(m: &MetricMultigraph) -> String {
    let mut out = serde_json::to_string_pretty(&GraphFile::from_metric(m))
        .expect("graph file serialization is infallible");
    out.push('\n');
    out
}

/// Undirected DOT, vertices then edges in declaration order, each edge
/// labelled with its length.
pub fn to_dot(m: &MetricMultigraph) -> String {
    let g = m.graph();
    let mut out = String::from("graph G {\n");
    for name in g.vertex_names() {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for (e, len) in g.edges().iter().zip(m.lengths()) {
        let _ = writeln!(
            out,
            "  {} -- {} [id={}, label={}];",
            quote(g.vertex_name(e.ends.0)),
            quote(g.vertex_name(e.ends.1)),
            quote(&e.id),
            quote(&format_rational(len)),
        );
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

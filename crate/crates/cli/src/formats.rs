//! Graph serialization: JSON (import and export) and Graphviz DOT.

use std::fmt::Write as _;

use a1fib_core::snc_graph::{Role, SncError, SncGraph, Vertex, VertexId};
use serde::{Deserialize, Serialize};

/// JSON Schema for [`GraphDoc`].
pub const GRAPH_SCHEMA: &str = include_str!("../schema/graph.schema.json");

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] SncError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: VertexId,
    pub label: String,
    pub self_int: i64,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[VertexId; 2]>,
}

impl From<&SncGraph> for GraphDoc {
    fn from(g: &SncGraph) -> Self {
        GraphDoc {
            vertices: g
                .vertices()
                .map(|v| VertexDoc {
                    id: v.id,
                    label: v.label.clone(),
                    self_int: v.self_int,
                    role: v.role.as_str().to_owned(),
                })
                .collect(),
            edges: g.edges().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<GraphDoc> for SncGraph {
    type Error = FormatError;

    fn try_from(doc: GraphDoc) -> Result<Self, FormatError> {
        let vertices = doc
            .vertices
            .into_iter()
            .map(|v| {
                Ok(Vertex {
                    id: v.id,
                    label: v.label,
                    self_int: v.self_int,
                    role: v.role.parse::<Role>()?,
                })
            })
            .collect::<Result<Vec<_>, SncError>>()?;
        Ok(SncGraph::from_parts(vertices, doc.edges.into_iter().map(|[a, b]| (a, b)))?)
    }
}

pub fn to_json(g: &SncGraph) -> String {
    serde_json::to_string_pretty(&GraphDoc::from(g)).expect("graph documents always serialize")
}

pub fn from_json(text: &str) -> Result<SncGraph, FormatError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    SncGraph::try_from(doc)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT graph; vertices sorted by id, labels carry the
/// self-intersection and role. `comments` are emitted as `//` lines first.
pub fn to_dot(g: &SncGraph, name: &str, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "// {c}").unwrap();
    }
    writeln!(out, "graph {} {{", escape_id(name)).unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for v in g.vertices() {
        writeln!(
            out,
            "  v{} [label=\"{} ({}) {}\"];",
            v.id,
            escape(&v.label),
            v.self_int,
            v.role
        )
        .unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  v{a} -- v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape_id(name: &str) -> String {
    let plain = !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.starts_with(|c: char| c.is_ascii_digit());
    if plain {
        name.to_owned()
    } else {
        format!("\"{}\"", escape(name))
    }
}

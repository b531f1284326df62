//! Graph JSON (strict schema, canonical writer) and DOT export.

use serde::{Deserialize, Serialize};

use crate::cartan::CartanDatum;
use crate::error::Error;
use crate::graph::{EdgeType, GraphSpec, OrbitGraph, OrbitVertex};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    cartan: String,
    rank_of_top: Option<i64>,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    dim: i64,
    rank: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    src: String,
    dst: String,
    label: usize,
    #[serde(rename = "type")]
    edge_type: EdgeType,
}

/// Parse graph JSON. Unknown fields are rejected; schema violations carry a
/// JSON pointer to the offending field.
pub fn parse_graph_json(bytes: &[u8]) -> Result<OrbitGraph, Error> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let doc: GraphDoc = serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Schema {
        pointer: path_to_pointer(&e.path().to_string()),
        message: e.inner().to_string(),
    })?;
    let cartan = CartanDatum::from_label(&doc.cartan)?;
    OrbitGraph::new(GraphSpec {
        cartan,
        rank_of_top: doc.rank_of_top,
        vertices: doc
            .vertices
            .into_iter()
            .map(|v| OrbitVertex { id: v.id, dim: v.dim, rank: v.rank })
            .collect(),
        edges: doc
            .edges
            .into_iter()
            .map(|e| (e.src, e.dst, e.label, e.edge_type))
            .collect(),
    })
}

fn path_to_pointer(path: &str) -> String {
    if path == "." {
        return "/".to_string();
    }
    let mut out = String::new();
    for seg in path.split('.') {
        if seg.is_empty() {
            continue;
        }
        // split trailing [idx] chains off the field name
        let mut rest = seg;
        while let Some(open) = rest.find('[') {
            let (name, bracket) = rest.split_at(open);
            if !name.is_empty() {
                out.push('/');
                out.push_str(name);
            }
            let close = bracket.find(']').unwrap_or(bracket.len() - 1);
            out.push('/');
            out.push_str(&bracket[1..close]);
            rest = &bracket[close + 1..];
        }
        if !rest.is_empty() {
            out.push('/');
            out.push_str(rest);
        }
    }
    if out.is_empty() {
        "/".to_string()
    } else {
        out
    }
}

fn doc_of(g: &OrbitGraph) -> GraphDoc {
    // vertices and edges are already stored in canonical order
    GraphDoc {
        cartan: g.cartan().label().to_string(),
        rank_of_top: g.rank_of_top(),
        vertices: g
            .vertices()
            .iter()
            .map(|v| VertexDoc { id: v.id.clone(), dim: v.dim, rank: v.rank })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                src: g.vertex_id(e.src).to_string(),
                dst: g.vertex_id(e.dst).to_string(),
                label: e.label,
                edge_type: e.edge_type,
            })
            .collect(),
    }
}

/// Canonical writer: fixed key order, vertices sorted by (dim, id), edges by
/// (src, dst, label). Byte-identical across runs.
pub fn write_graph_json(g: &OrbitGraph) -> Vec<u8> {
    let mut out = serde_json::to_vec(&doc_of(g)).expect("graph serialization cannot fail");
    out.push(b'\n');
    out
}

pub fn write_graph_json_pretty(g: &OrbitGraph) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&doc_of(g)).expect("graph serialization cannot fail");
    out.push(b'\n');
    out
}

/// Deterministic DOT text: vertices rank-grouped by dimension, double (N)
/// edges drawn with `penwidth=2` and `color="black:black"`, labels showing
/// the simple-root name.
pub fn export_dot(g: &OrbitGraph) -> String {
    let mut s = String::new();
    s.push_str("digraph orbitweave {\n");
    s.push_str("  rankdir=BT;\n");
    s.push_str("  node [shape=circle];\n");
    for v in g.vertices() {
        s.push_str(&format!("  \"{}\" [label=\"{}\"];\n", v.id, v.id));
    }
    let mut dims: Vec<i64> = g.vertices().iter().map(|v| v.dim).collect();
    dims.sort_unstable();
    dims.dedup();
    for d in dims {
        let ids: Vec<String> = g
            .vertices()
            .iter()
            .filter(|v| v.dim == d)
            .map(|v| format!("\"{}\";", v.id))
            .collect();
        s.push_str(&format!("  {{ rank=same; {} }}\n", ids.join(" ")));
    }
    for e in g.edges() {
        let name = g.cartan().root_name(e.label);
        if e.edge_type.is_double() {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\", penwidth=2, color=\"black:black\"];\n",
                g.vertex_id(e.src),
                g.vertex_id(e.dst),
                name
            ));
        } else {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                g.vertex_id(e.src),
                g.vertex_id(e.dst),
                name
            ));
        }
    }
    s.push_str("}\n");
    s
}

//! Graph documents: JSON, DOT, TikZ and plain text, plus fixture loading.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cartan::{ClassicalWeight, Family};
use crate::error::{Error, Result};
use crate::graph::{CrystalGraph, Edge, RealizationTag, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: usize,
    pub depth: usize,
    pub state: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: usize,
    pub color: usize,
    pub to: usize,
}

/// The on-disk graph schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub cartan: String,
    pub rank: usize,
    pub level: i64,
    pub highest_weight: String,
    pub realization: String,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
}

pub fn export_json(g: &CrystalGraph) -> GraphDocument {
    GraphDocument {
        cartan: g.family.token().to_string(),
        rank: g.rank,
        level: g.level,
        highest_weight: g.highest_weight.to_string(),
        realization: g.realization.to_string(),
        nodes: g
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| NodeDoc {
                id,
                depth: v.depth,
                state: v.state.clone(),
                weight: v.weight.to_string(),
            })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeDoc {
                from: e.from,
                color: e.color,
                to: e.to,
            })
            .collect(),
    }
}

pub fn json_string(g: &CrystalGraph) -> String {
    let mut s = serde_json::to_string_pretty(&export_json(g)).expect("documents always serialize");
    s.push('\n');
    s
}

/// Line of the `nth` occurrence of `needle`, 1-based; 0 when absent.
fn line_of(text: &str, needle: &str, nth: usize) -> usize {
    text.match_indices(needle)
        .nth(nth)
        .map(|(pos, _)| text[..pos].matches('\n').count() + 1)
        .unwrap_or(0)
}

fn schema(line: usize, msg: impl Into<String>) -> Error {
    Error::Schema {
        line,
        msg: msg.into(),
    }
}

/// Parses and validates a graph document.
pub fn parse_document(text: &str) -> Result<CrystalGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| schema(e.line(), e.to_string()))?;
    let family: Family = doc.cartan.parse().map_err(|_| {
        schema(
            line_of(text, "\"cartan\"", 0),
            format!("unknown cartan {:?}", doc.cartan),
        )
    })?;
    let realization: RealizationTag = doc.realization.parse().map_err(|_| {
        schema(
            line_of(text, "\"realization\"", 0),
            format!("unknown realization {:?}", doc.realization),
        )
    })?;
    let datum = crate::cartan::build_datum(family, doc.rank)
        .map_err(|e| schema(line_of(text, "\"rank\"", 0), e.to_string()))?;
    let weight = |s: &str, line: usize| -> Result<ClassicalWeight> {
        let w: ClassicalWeight = s.parse().map_err(|_| schema(line, format!("bad weight {s:?}")))?;
        if w.0.len() != doc.rank + 1 {
            return Err(schema(
                line,
                format!("weight {s:?} needs {} entries", doc.rank + 1),
            ));
        }
        Ok(w)
    };
    let highest_weight = weight(&doc.highest_weight, line_of(text, "\"highest_weight\"", 0))?;

    let mut vertices = Vec::with_capacity(doc.nodes.len());
    for (k, n) in doc.nodes.iter().enumerate() {
        let line = line_of(text, "\"id\"", k);
        if n.id != k {
            return Err(schema(
                line,
                format!("node ids must be 0..N-1 in order, found {} at {k}", n.id),
            ));
        }
        if (k == 0) != (n.depth == 0) {
            return Err(schema(line, "only the root has depth 0"));
        }
        vertices.push(Vertex {
            state: n.state.clone(),
            depth: n.depth,
            weight: weight(&n.weight, line)?,
            stats: None,
            raise: None,
            expanded: false,
        });
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (k, e) in doc.edges.iter().enumerate() {
        let line = line_of(text, "\"from\"", k);
        if e.color > datum.rank {
            return Err(schema(
                line,
                format!("color {} is not a node of {}", e.color, family),
            ));
        }
        if e.from >= vertices.len() || e.to >= vertices.len() {
            return Err(schema(line, "edge endpoint is not a node"));
        }
        if vertices[e.to].depth != vertices[e.from].depth + 1 {
            return Err(schema(line, "edge does not go one level down"));
        }
        edges.push(Edge {
            from: e.from,
            color: e.color,
            to: e.to,
        });
    }
    let max_depth = vertices.iter().map(|v| v.depth).max().unwrap_or(0);
    Ok(CrystalGraph {
        family,
        rank: doc.rank,
        level: doc.level,
        highest_weight,
        realization,
        vertices,
        edges,
        depth_limit: Some(max_depth),
        stray_raises: Vec::new(),
    })
}

pub fn load_fixture(path: &Path) -> Result<CrystalGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| schema(0, format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

const PALETTE: [&str; 8] = [
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "teal",
];

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot(g: &CrystalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph crystal {{\n  // {} rank {} level {} weight {} ({})",
        g.family, g.rank, g.level, g.highest_weight, g.realization
    );
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    for (k, v) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "  n{k} [label=\"{}\"];", escape(&v.state));
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{}\", color={}];",
            e.from,
            e.to,
            e.color,
            PALETTE[e.color % PALETTE.len()]
        );
    }
    out.push_str("}\n");
    out
}

fn tex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('|', "\\textbar{}")
}

/// Vertices laid out by depth, left to right in id order.
pub fn export_tikz(g: &CrystalGraph) -> String {
    let mut out = String::from("\\begin{tikzpicture}[>=stealth, every node/.style={draw, font=\\tiny}]\n");
    let mut slot = vec![0usize; g.max_depth() + 1];
    for (k, v) in g.vertices.iter().enumerate() {
        let x = slot[v.depth] * 4;
        slot[v.depth] += 1;
        let _ = writeln!(
            out,
            "  \\node (n{k}) at ({x},{}) {{{}}};",
            -2 * v.depth as i64,
            tex_escape(&v.state)
        );
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  \\draw[->] (n{}) -- node[draw=none, midway, left] {{{}}} (n{});",
            e.from, e.color, e.to
        );
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn export_text(g: &CrystalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} rank {} level {} weight {} realization {}",
        g.family, g.rank, g.level, g.highest_weight, g.realization
    );
    for (k, v) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "{k}\tdepth {}\twt {}\t{}", v.depth, v.weight, v.state);
    }
    for e in &g.edges {
        let _ = writeln!(out, "{} -{}-> {}", e.from, e.color, e.to);
    }
    out
}

/// Output formats for graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
    Tikz,
    Text,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            "tikz" => Ok(GraphFormat::Tikz),
            "text" => Ok(GraphFormat::Text),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

pub fn export(g: &CrystalGraph, f: GraphFormat) -> String {
    match f {
        GraphFormat::Dot => export_dot(g),
        GraphFormat::Json => json_string(g),
        GraphFormat::Tikz => export_tikz(g),
        GraphFormat::Text => export_text(g),
    }
}

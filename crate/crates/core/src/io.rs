//! Hypergraph file formats.
//!
//! The canonical format is a JSON document `{"n": .., "k": .., "edges": [[..], ..]}` with
//! 1-based vertex ids. The line format is a header `n k m` followed by `m` lines of `k`
//! whitespace-separated vertex ids. Blank lines and lines starting with `#` are ignored
//! in the line format.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphDoc {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    /// Free-form provenance written by tools; ignored when parsing.
    #[serde(default, skip_serializing)]
    #[allow(dead_code)]
    meta: Option<serde_json::Value>,
}

/// Parses either format, picking JSON when the first non-blank character is `{`.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_lines(text)
    }
}

pub fn parse_json(text: &str) -> Result<Hypergraph> {
    let doc: HypergraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Hypergraph::validate(doc.edges, doc.n, doc.k)
}

pub fn parse_lines(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
    let head = parse_ints(header)?;
    let [n, k, m] = head[..] else {
        return Err(Error::Parse(format!("header must be `n k m`, got `{header}`")));
    };
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        edges.push(parse_ints(line)?);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    Hypergraph::validate(edges, n, k)
}

fn parse_ints(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: `{tok}`")))
        })
        .collect()
}

/// Canonical JSON rendering, one edge per line, deterministic byte for byte.
pub fn to_json(h: &Hypergraph) -> String {
    render_json(h, None)
}

/// [`to_json`] with a leading `"meta"` field holding `meta` on one line.
pub fn to_json_with_meta(h: &Hypergraph, meta: &serde_json::Value) -> String {
    render_json(h, Some(meta))
}

fn render_json(h: &Hypergraph, meta: Option<&serde_json::Value>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    if let Some(meta) = meta {
        let _ = writeln!(out, "  \"meta\": {meta},");
    }
    let _ = writeln!(out, "  \"n\": {},", h.n());
    let _ = writeln!(out, "  \"k\": {},", h.k());
    if h.num_edges() == 0 {
        let _ = writeln!(out, "  \"edges\": []");
    } else {
        let _ = writeln!(out, "  \"edges\": [");
        for (i, e) in h.edges().iter().enumerate() {
            let body: Vec<String> = e.iter().map(usize::to_string).collect();
            let sep = if i + 1 == h.num_edges() { "" } else { "," };
            let _ = writeln!(out, "    [{}]{sep}", body.join(", "));
        }
        let _ = writeln!(out, "  ]");
    }
    let _ = writeln!(out, "}}");
    out
}

pub fn to_lines(h: &Hypergraph) -> String {
    render_lines(h, None)
}

/// [`to_lines`] preceded by a `#` comment line holding `meta` as JSON.
pub fn to_lines_with_meta(h: &Hypergraph, meta: &serde_json::Value) -> String {
    render_lines(h, Some(meta))
}

fn render_lines(h: &Hypergraph, meta: Option<&serde_json::Value>) -> String {
    let mut out = meta.map(|m| format!("# {m}\n")).unwrap_or_default();
    out += &format!("{} {} {}\n", h.n(), h.k(), h.num_edges());
    for e in h.edges() {
        let body: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&body.join(" "));
        out.push('\n');
    }
    out
}

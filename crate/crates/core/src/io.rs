//! Text formats for distance matrices and graphs.
//!
//! * CSV matrix: `n` lines of `n` comma-separated reals. Points are named
//!   `0..n`. Blank lines and lines starting with `#` are skipped.
//! * JSON matrix: `{"points": [names], "dist": [[...], ...]}`; `points` may
//!   be omitted.
//! * Edge list: one `u v [length]` per line, length defaulting to 1. A line
//!   holding a single name declares a vertex. `#` starts a comment. The
//!   writer emits edges sorted lexicographically by endpoint names.
//! * JSON graph: `{"vertices": [names], "edges": [["u", "v", length?], ...]}`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metricspace::FiniteMetricSpace;

/// A parsed input file.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Matrix(FiniteMetricSpace),
    Graph(Graph),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_real(line: usize, token: &str) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| parse_err(line, format!("not a number: {token:?}")))
}

pub fn parse_matrix_csv(text: &str, epsilon: f64) -> Result<FiniteMetricSpace> {
    let rows = content_lines(text)
        .map(|(no, line)| line.split(',').map(|t| parse_real(no, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    crate::metricspace::validate_metric(rows, epsilon)
}

pub fn write_matrix_csv(space: &FiniteMetricSpace) -> String {
    let mut out = String::new();
    for row in space.matrix() {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn json_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| parse_err(0, format!("{what} must be an array")))?
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(parse_err(0, format!("{what} entries must be strings"))),
        })
        .collect()
}

fn matrix_from_json(v: &Value, epsilon: f64) -> Result<FiniteMetricSpace> {
    let dist = v.get("dist").ok_or_else(|| parse_err(0, "missing \"dist\""))?;
    let rows = dist
        .as_array()
        .ok_or_else(|| parse_err(0, "\"dist\" must be an array of rows"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err(0, "\"dist\" rows must be arrays"))?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| parse_err(0, "distances must be numbers")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    match v.get("points") {
        Some(p) => FiniteMetricSpace::with_names(string_list(p, "\"points\"")?, rows, epsilon),
        None => crate::metricspace::validate_metric(rows, epsilon),
    }
}

pub fn parse_matrix_json(text: &str, epsilon: f64) -> Result<FiniteMetricSpace> {
    matrix_from_json(&json_value(text)?, epsilon)
}

pub fn matrix_to_json(space: &FiniteMetricSpace) -> Value {
    json!({ "points": space.names(), "dist": space.matrix() })
}

pub fn write_matrix_json(space: &FiniteMetricSpace) -> String {
    matrix_to_json(space).to_string()
}

#[derive(Default)]
struct GraphBuilder {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<(usize, usize, f64)>,
}

impl GraphBuilder {
    fn vertex(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), self.names.len() - 1);
        self.names.len() - 1
    }

    fn finish(self) -> Result<Graph> {
        if self.names.is_empty() {
            return Err(parse_err(0, "no vertices"));
        }
        Graph::new(self.names, self.edges)
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::default();
    for (no, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [v] => {
                b.vertex(v);
            }
            [u, v] | [u, v, _] => {
                let len = if tokens.len() == 3 { parse_real(no, tokens[2])? } else { 1.0 };
                let (iu, iv) = (b.vertex(u), b.vertex(v));
                b.edges.push((iu, iv, len));
            }
            _ => return Err(parse_err(no, format!("expected `u v [length]`, got {line:?}"))),
        }
    }
    b.finish()
}

fn sorted_named_edges(g: &Graph) -> Vec<(&str, &str, f64)> {
    let names = g.names();
    let mut edges: Vec<(&str, &str, f64)> = g
        .edges()
        .map(|(u, v, l)| {
            let (a, b) = (names[u].as_str(), names[v].as_str());
            if a <= b {
                (a, b, l)
            } else {
                (b, a, l)
            }
        })
        .collect();
    edges.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    edges
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if g.edge_count() == 0 {
        for name in g.names() {
            out.push_str(name);
            out.push('\n');
        }
    }
    for (u, v, l) in sorted_named_edges(g) {
        if l == 1.0 {
            out.push_str(&format!("{u} {v}\n"));
        } else {
            out.push_str(&format!("{u} {v} {l}\n"));
        }
    }
    out
}

fn graph_from_json(v: &Value) -> Result<Graph> {
    let mut b = GraphBuilder::default();
    if let Some(vs) = v.get("vertices") {
        for name in string_list(vs, "\"vertices\"")? {
            if b.index.contains_key(&name) {
                return Err(Error::InvalidGraph(format!("duplicate vertex name {name:?}")));
            }
            b.vertex(&name);
        }
    }
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(0, "missing \"edges\" array"))?;
    for e in edges {
        let parts = e.as_array().ok_or_else(|| parse_err(0, "each edge must be an array"))?;
        if !(2..=3).contains(&parts.len()) {
            return Err(parse_err(0, "each edge must be [u, v] or [u, v, length]"));
        }
        let ends = string_list(&Value::Array(parts[..2].to_vec()), "edge endpoints")?;
        let len = match parts.get(2) {
            None | Some(Value::Null) => 1.0,
            Some(x) => x.as_f64().ok_or_else(|| parse_err(0, "edge length must be a number"))?,
        };
        let (iu, iv) = (b.vertex(&ends[0]), b.vertex(&ends[1]));
        b.edges.push((iu, iv, len));
    }
    b.finish()
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    graph_from_json(&json_value(text)?)
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = sorted_named_edges(g)
        .into_iter()
        .map(|(u, v, l)| if l == 1.0 { json!([u, v]) } else { json!([u, v, l]) })
        .collect();
    json!({ "vertices": g.names(), "edges": edges })
}

pub fn write_graph_json(g: &Graph) -> String {
    graph_to_json(g).to_string()
}

/// Parse any supported format, deciding by content.
pub fn parse_auto(text: &str, epsilon: f64) -> Result<Input> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v = json_value(text)?;
        return if v.get("dist").is_some() {
            matrix_from_json(&v, epsilon).map(Input::Matrix)
        } else if v.get("edges").is_some() {
            graph_from_json(&v).map(Input::Graph)
        } else {
            Err(parse_err(1, "JSON input needs \"dist\" or \"edges\""))
        };
    }
    match content_lines(text).next() {
        None => Err(parse_err(0, "empty input")),
        Some((_, line)) if line.contains(',') => parse_matrix_csv(text, epsilon).map(Input::Matrix),
        Some(_) => parse_edge_list(text).map(Input::Graph),
    }
}

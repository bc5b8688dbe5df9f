//! Text formats: edge lists, weight files and partition files.
//!
//! Edge list: first non-comment line `n m`, then `m` lines `u v` with
//! 0-based endpoints. Lines starting with `#` and blank lines are skipped.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeWeights};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a nonnegative integer, got '{tok}'")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing 'n m' header"))?;
    let toks: Vec<_> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hline, "header must be 'n m'"));
    }
    let n = parse_usize(toks[0], hline)?;
    let m = parse_usize(toks[1], hline)?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut last = hline;
    for (line, body) in lines {
        let toks: Vec<_> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(line, "edge line must be 'u v'"));
        }
        let (u, v) = (parse_usize(toks[0], line)?, parse_usize(toks[1], line)?);
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        Graph::new(n, [(u, v)]).map_err(|e| parse_err(line, e.to_string()))?;
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, Error::DuplicateEdge(u.min(v), u.max(v)).to_string()));
        }
        edges.push((u, v));
        last = line;
    }
    if edges.len() != m {
        return Err(parse_err(last, format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_weights(text: &str) -> Result<NodeWeights> {
    let mut w = Vec::new();
    for (line, body) in content_lines(text) {
        let v: f64 = body.parse().map_err(|_| parse_err(line, format!("expected a number, got '{body}'")))?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(parse_err(line, format!("weight must be nonnegative, got {body}")));
        }
        w.push(v);
    }
    NodeWeights::new(w)
}

/// One class per line, space-separated 0-based node indices.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    content_lines(text)
        .map(|(line, body)| body.split_whitespace().map(|t| parse_usize(t, line)).collect())
        .collect()
}

pub fn write_partition(classes: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for class in classes {
        let strs: Vec<_> = class.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", strs.join(" "));
    }
    out
}

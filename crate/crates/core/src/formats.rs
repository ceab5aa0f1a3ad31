//! Text formats: the `p tds` edge list and the set file.
//!
//! Edge list: a `p tds <order> <edge-count>` header, then one `e <u> <v>`
//! line per edge with 1-based labels, `u < v`, sorted. Set file: one set per
//! line as whitespace-separated 1-based labels; `#` starts a comment that
//! runs to the end of the line.

use std::fmt::Write as _;

use crate::constructions::ConstructionResult;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Graph};
use crate::vertex_set::VertexSet;

pub fn edge_list(g: &impl Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p tds {} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

fn number(line: usize, token: Option<&str>, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token.parse().map_err(|_| {
        Error::parse(
            line,
            format!("{what} {token:?} is not a non-negative integer"),
        )
    })
}

/// Parses an edge list. Lines starting with `c` are comments.
pub fn parse_edge_list(text: &str) -> Result<AdjacencyGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                if tokens.next() != Some("tds") {
                    return Err(Error::parse(line, "expected `p tds <order> <edges>`"));
                }
                let order = number(line, tokens.next(), "order")?;
                let count = number(line, tokens.next(), "edge count")?;
                header = Some((order, count));
            }
            Some("e") => {
                let Some((order, _)) = header else {
                    return Err(Error::parse(line, "edge before problem line"));
                };
                let u = number(line, tokens.next(), "endpoint")?;
                let v = number(line, tokens.next(), "endpoint")?;
                if u == 0 || v == 0 || u > order || v > order {
                    return Err(Error::parse(line, format!("endpoint outside 1..={order}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
        if tokens.next().is_some() {
            return Err(Error::parse(line, "trailing tokens"));
        }
    }
    let (order, count) = header.ok_or_else(|| Error::parse(1, "missing problem line"))?;
    if edges.len() != count {
        return Err(Error::Parameter(format!(
            "header promises {count} edges, found {}",
            edges.len()
        )));
    }
    AdjacencyGraph::from_edges(order, edges)
}

/// Parses a set file against a graph of the given order.
///
/// Returns each set with the 1-based line it came from.
pub fn parse_set_file(text: &str, order: usize) -> Result<Vec<(usize, VertexSet)>> {
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let labels = body
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::parse(line, format!("label {t:?} is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        let set = VertexSet::from_labels(order, &labels)
            .map_err(|e| Error::parse(line, e.to_string()))?;
        sets.push((line, set));
    }
    Ok(sets)
}

/// One line per construction with a trailing `# <id> validated=<bool>` comment.
pub fn construction_set_file(results: &[ConstructionResult]) -> String {
    let mut out = String::new();
    for c in results {
        writeln!(
            out,
            "{} # {} validated={}",
            c.set.label_line(),
            c.id,
            c.validated
        )
        .expect("writing to a String");
    }
    out
}

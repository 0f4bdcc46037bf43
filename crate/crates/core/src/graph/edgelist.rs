//! Plain-text edge lists.
//!
//! One edge per line as two whitespace-separated non-negative integers. A
//! line holding a single integer declares an isolated node. Blank lines and
//! lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Graph, NodeId};
use crate::error::{GmmError, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let err = |message: String| GmmError::Parse { line, message };
        let ids = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<NodeId>()
                    .map_err(|_| err(format!("expected a non-negative integer, found {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match ids.as_slice() {
            [v] => {
                g.add_node(*v);
            }
            [u, v] => {
                if u == v {
                    return Err(err(format!("self-loop on node {u}")));
                }
                if !g.add_edge(*u, *v)? {
                    return Err(err(format!("duplicate edge {u} {v}")));
                }
            }
            _ => return Err(err(format!("expected 1 or 2 fields, found {}", ids.len()))),
        }
    }
    Ok(g)
}

/// Canonical text form: sorted edges `u v` with `u < v`, then isolated nodes.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to String");
    }
    for v in g.nodes().filter(|&v| g.degree(v) == 0) {
        writeln!(out, "{v}").expect("writing to String");
    }
    out
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&crate::error::read_file(path)?)
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, serialize_edge_list(g))?;
    Ok(())
}

//! Edge-list text format.
//!
//! ```text
//! n=<n> L=<L|-> boundary=<periodic|free|->
//! u v        one line per edge, u < v
//! u v s      shortcut edge
//! # positions
//! id x y
//! ```
//!
//! Floats use Rust's shortest round-trip formatting, so reading a written
//! file reproduces the graph exactly.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use super::{Boundary, Graph, NodeId, Point2D};
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    let l = graph.box_length().map_or_else(|| "-".to_string(), |l| l.to_string());
    let b = graph.boundary().map_or("-", Boundary::as_str);
    writeln!(out, "n={} L={} boundary={}", graph.node_count(), l, b)?;
    let shortcuts: HashSet<(NodeId, NodeId)> = graph.shortcut_edges().iter().copied().collect();
    for (u, v) in graph.edges() {
        if shortcuts.contains(&(u, v)) {
            writeln!(out, "{u} {v} s")?;
        } else {
            writeln!(out, "{u} {v}")?;
        }
    }
    if let Some(pos) = graph.positions() {
        writeln!(out, "# positions")?;
        for (i, p) in pos.iter().enumerate() {
            writeln!(out, "{i} {} {}", p.x, p.y)?;
        }
    }
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn field<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=` in header")))
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| parse_err(line, format!("bad or missing {what}")))
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let header = header?;
    let mut toks = header.split_whitespace();
    let n: usize = field(toks.next(), "n", 1)?.parse().map_err(|_| parse_err(1, "bad node count"))?;
    let l = match field(toks.next(), "L", 1)? {
        "-" => None,
        s => Some(s.parse::<f64>().map_err(|_| parse_err(1, "bad box length"))?),
    };
    let boundary = match field(toks.next(), "boundary", 1)? {
        "-" => None,
        s => Some(s.parse::<Boundary>().map_err(|_| parse_err(1, "bad boundary"))?),
    };

    let mut edges = Vec::new();
    let mut shortcuts = Vec::new();
    let mut positions: Option<Vec<Option<Point2D>>> = None;
    for (no, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if line.trim_start_matches('#').trim() == "positions" {
                positions = Some(vec![None; n]);
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        match positions.as_mut() {
            None => {
                let u: NodeId = num(toks.next(), no, "node id")?;
                let v: NodeId = num(toks.next(), no, "node id")?;
                match toks.next() {
                    None => {}
                    Some("s") => shortcuts.push((u.min(v), u.max(v))),
                    Some(t) => return Err(parse_err(no, format!("unexpected token `{t}`"))),
                }
                edges.push((u, v));
            }
            Some(pos) => {
                let id: usize = num(toks.next(), no, "node id")?;
                let x: f64 = num(toks.next(), no, "x")?;
                let y: f64 = num(toks.next(), no, "y")?;
                let slot = pos.get_mut(id).ok_or_else(|| parse_err(no, "position id out of range"))?;
                *slot = Some(Point2D { x, y });
            }
        }
    }

    let mut graph = Graph::from_edges(n, edges).map_err(|e| parse_err(0, e.to_string()))?;
    if let Some(pos) = positions {
        let pos: Option<Vec<Point2D>> = pos.into_iter().collect();
        let pos = pos.ok_or_else(|| parse_err(0, "positions block is incomplete"))?;
        let (l, b) = l.zip(boundary).ok_or_else(|| parse_err(1, "positions need L and boundary"))?;
        graph = graph.with_embedding(pos, l, b);
    }
    for (u, v) in shortcuts {
        graph.push_shortcut(u, v);
    }
    graph.validate()?;
    Ok(graph)
}

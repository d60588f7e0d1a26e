//! Plain-text graph and coloring files.
//!
//! ```text
//! p bgraph <n1> <n2>          p bcol <n1> <n2>
//! e <x> <y>                   e <x> <y> <r|b>
//! ```
//!
//! Indices are 0-based and lines starting with `#` are comments. Graph files
//! may repeat an edge; coloring files may not.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

fn index(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("`{tok}` is not a vertex index")))
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    let mut it = content_lines(text);
    let (first_line, first) = it.next().ok_or_else(|| parse_err(0, "missing problem line"))?;
    let (n1, n2) = match first.as_slice() {
        ["p", "bgraph", a, b] => (index(a, first_line)?, index(b, first_line)?),
        _ => return Err(parse_err(first_line, "expected `p bgraph <n1> <n2>`")),
    };
    let mut g = BipartiteGraph::empty(n1, n2)?;
    for (line, toks) in it {
        match toks.as_slice() {
            ["e", x, y] => {
                let (x, y) = (index(x, line)?, index(y, line)?);
                if x >= n1 || y >= n2 {
                    return Err(parse_err(line, format!("edge ({x}, {y}) out of range for {n1}+{n2}")));
                }
                g.add_edge(x, y);
            }
            _ => return Err(parse_err(line, "expected `e <x> <y>`")),
        }
    }
    Ok(g)
}

pub fn write_graph(g: &BipartiteGraph) -> String {
    let mut s = format!("p bgraph {} {}\n", g.n1(), g.n2());
    for (x, y) in g.edges() {
        let _ = writeln!(s, "e {x} {y}");
    }
    s
}

/// Parse a coloring file. The host graph is the set of listed edges, so the
/// result is always total.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    let lines: Vec<(usize, Vec<&str>)> = content_lines(text).collect();
    let mut it = lines.into_iter();
    let (first_line, first) = it.next().ok_or_else(|| parse_err(0, "missing problem line"))?;
    let (n1, n2) = match first.as_slice() {
        ["p", "bcol", a, b] => (index(a, first_line)?, index(b, first_line)?),
        _ => return Err(parse_err(first_line, "expected `p bcol <n1> <n2>`")),
    };
    let mut seen: HashMap<(usize, usize), (Color, usize)> = HashMap::new();
    let mut edges = Vec::new();
    for (line, toks) in it {
        let (x, y, c) = match toks.as_slice() {
            ["e", x, y, c] => (index(x, line)?, index(y, line)?, *c),
            _ => return Err(parse_err(line, "expected `e <x> <y> <r|b>`")),
        };
        let color = match c {
            "r" => Color::Red,
            "b" => Color::Blue,
            _ => return Err(parse_err(line, format!("color `{c}` is not r or b"))),
        };
        if x >= n1 || y >= n2 {
            return Err(parse_err(line, format!("edge ({x}, {y}) out of range for {n1}+{n2}")));
        }
        if let Some(&(prev, at)) = seen.get(&(x, y)) {
            let what = if prev == color { "duplicate" } else { "contradictory" };
            return Err(parse_err(
                line,
                format!("{what} color for edge ({x}, {y}), first given on line {at}"),
            ));
        }
        seen.insert((x, y), (color, line));
        edges.push((x, y, color));
    }
    let pairs: Vec<_> = edges.iter().map(|&(x, y, _)| (x, y)).collect();
    let base = BipartiteGraph::from_edge_list(n1, n2, &pairs)?;
    let mut c = EdgeColoring::new(base);
    for (x, y, color) in edges {
        c.set(x, y, color)?;
    }
    Ok(c)
}

/// Parse a coloring and check it colors every edge of `base` and nothing else.
pub fn parse_coloring_of(base: &BipartiteGraph, text: &str) -> Result<EdgeColoring> {
    let c = parse_coloring(text)?;
    if c.base() != base {
        return Err(Error::param("coloring does not cover exactly the host's edges"));
    }
    Ok(c)
}

/// Serialize the colored edges; unassigned edges are omitted.
pub fn write_coloring(c: &EdgeColoring) -> String {
    let g = c.base();
    let mut s = format!("p bcol {} {}\n", g.n1(), g.n2());
    for (x, y, color) in c.colored_edges() {
        let _ = writeln!(s, "e {x} {y} {}", color.letter());
    }
    s
}

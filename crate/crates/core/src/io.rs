//! Plain-text graph files.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v
//! ...
//! ```
//! Ids are 0-based; pairs are canonicalized on load. Self-loops, duplicate
//! edges and a wrong edge count are rejected.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A parsed graph together with the `#` comment lines found before the header.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub comments: Vec<String>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(parse_err(line, "trailing fields"));
    }
    Ok((a, b))
}

pub fn read_graph_full<R: Read>(reader: R) -> Result<GraphFile> {
    let mut comments = Vec::new();
    let mut header = None;
    let mut edges = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = trimmed.strip_prefix('#') {
            if header.is_none() {
                comments.push(c.trim().to_string());
            }
            continue;
        }
        let pair = parse_pair(trimmed, lineno)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push((lineno, pair));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing \"n m\" header"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    // Validate one edge at a time so errors carry a line number.
    let mut seen = std::collections::HashSet::with_capacity(m);
    for &(lineno, (a, b)) in &edges {
        if a >= n || b >= n {
            return Err(parse_err(
                lineno,
                Error::VertexOutOfRange {
                    vertex: a.max(b),
                    n,
                }
                .to_string(),
            ));
        }
        if a == b {
            return Err(parse_err(lineno, Error::SelfLoop(a).to_string()));
        }
        if !seen.insert(crate::graph::canonical(a, b)) {
            return Err(parse_err(
                lineno,
                Error::DuplicateEdge(crate::graph::canonical(a, b)).to_string(),
            ));
        }
    }
    let graph = Graph::new(n, edges.into_iter().map(|(_, e)| e))?;
    Ok(GraphFile { graph, comments })
}

pub fn read_graph<R: Read>(reader: R) -> Result<Graph> {
    Ok(read_graph_full(reader)?.graph)
}

pub fn read_graph_path(path: impl AsRef<Path>) -> Result<Graph> {
    read_graph(File::open(path)?)
}

/// Writes `g` with sorted edges, preceded by `# <line>` for each comment.
pub fn write_graph_with_comments<W: Write>(
    writer: W,
    g: &Graph,
    comments: &[String],
) -> Result<()> {
    let mut w = BufWriter::new(writer);
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "{} {}", g.n(), g.m())?;
    for &(u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_graph<W: Write>(writer: W, g: &Graph) -> Result<()> {
    write_graph_with_comments(writer, g, &[])
}

pub fn write_graph_path(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    write_graph(File::create(path)?, g)
}

//! Text formats.
//!
//! Edge list: a header `n <vertices> <edges>` followed by one `u v` or
//! `u v r` line per edge, 0-based. Lines starting with `#` are comments.
//!
//! DIMACS `.col`: `p edge <n> <m>` then `e <u+1> <v+1>`; `c` lines are
//! comments. Only the undirected view survives a DIMACS round trip.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph, VertexId};
use crate::power::ResidueGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header")]
    MissingHeader,
    #[error("header announces {announced} edges, found {found}")]
    EdgeCount { announced: usize, found: usize },
    #[error("some edges carry residues and some do not")]
    MixedLabels,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parsed edge list; `labels` is `Some` iff every edge line has a residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: OrientedGraph,
    pub labels: Option<Vec<u32>>,
}

impl EdgeList {
    /// Residue graph mod `p`; an unlabelled list yields unlabelled edges.
    pub fn into_residue_graph(self, p: u32) -> ResidueGraph {
        let residues = match self.labels {
            Some(l) => l.into_iter().map(Some).collect(),
            None => vec![None; self.graph.n_edges()],
        };
        ResidueGraph::new(p, self.graph, residues).expect("one label per edge")
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn numbers(line_no: usize, fields: &[&str]) -> Result<Vec<usize>, FormatError> {
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| syntax(line_no, format!("'{f}' is not a number"))))
        .collect()
}

fn comment_lines(out: &mut String, marker: &str, comments: &[String]) {
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "{marker} {line}");
        }
    }
}

pub fn write_edge_list(g: &OrientedGraph, labels: Option<&[Option<u32>]>, comments: &[String]) -> String {
    let mut out = String::new();
    comment_lines(&mut out, "#", comments);
    let _ = writeln!(out, "n {} {}", g.n_vertices(), g.n_edges());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match labels.and_then(|l| l[i]) {
            Some(r) => writeln!(out, "{u} {v} {r}"),
            None => writeln!(out, "{u} {v}"),
        }
        .expect("writing to a String");
    }
    out
}

pub fn write_residue_graph(g: &ResidueGraph, comments: &[String]) -> String {
    write_edge_list(g.graph(), Some(g.residues()), comments)
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId, Option<u32>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if header.is_none() {
            if fields.len() != 3 || fields[0] != "n" {
                return Err(syntax(line_no, "expected 'n <vertices> <edges>'"));
            }
            let v = numbers(line_no, &fields[1..])?;
            header = Some((v[0], v[1]));
            continue;
        }
        let v = numbers(line_no, &fields)?;
        match *v.as_slice() {
            [u, w] => edges.push((u, w, None)),
            [u, w, r] => {
                let r = u32::try_from(r).map_err(|_| syntax(line_no, "residue out of range"))?;
                edges.push((u, w, Some(r)))
            }
            _ => return Err(syntax(line_no, "expected 'u v' or 'u v r'")),
        }
    }
    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if m != edges.len() {
        return Err(FormatError::EdgeCount { announced: m, found: edges.len() });
    }
    let labeled = edges.iter().filter(|e| e.2.is_some()).count();
    if labeled != 0 && labeled != edges.len() {
        return Err(FormatError::MixedLabels);
    }
    let graph = OrientedGraph::new(n, edges.iter().map(|&(u, v, _)| (u, v)))?;
    let labels = (labeled > 0).then(|| {
        let mut sorted = edges.clone();
        sorted.sort_unstable_by_key(|&(u, v, _)| (u, v));
        sorted.into_iter().map(|(_, _, r)| r.expect("all labelled")).collect()
    });
    Ok(EdgeList { graph, labels })
}

pub fn write_dimacs(g: &OrientedGraph, comments: &[String]) -> String {
    let mut out = String::new();
    comment_lines(&mut out, "c", comments);
    let _ = writeln!(out, "p edge {} {}", g.n_vertices(), g.n_edges());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Reads a DIMACS graph, orienting each edge as written.
pub fn parse_dimacs(text: &str) -> Result<OrientedGraph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => {}
            Some(&"p") => {
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
                    return Err(syntax(line_no, "expected 'p edge <n> <m>'"));
                }
                let v = numbers(line_no, &fields[2..])?;
                header = Some((v[0], v[1]));
            }
            Some(&"e") => {
                let v = numbers(line_no, &fields[1..])?;
                match v.as_slice() {
                    &[a, b] if a >= 1 && b >= 1 => edges.push((a - 1, b - 1)),
                    _ => return Err(syntax(line_no, "expected 'e <u> <v>' with 1-based vertices")),
                }
            }
            Some(other) => return Err(syntax(line_no, format!("unknown line type '{other}'"))),
        }
    }
    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if m != edges.len() {
        return Err(FormatError::EdgeCount { announced: m, found: edges.len() });
    }
    Ok(OrientedGraph::new(n, edges)?)
}

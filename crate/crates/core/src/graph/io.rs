//! Plain-text graph files.
//!
//! ```text
//! # optional comment lines
//! V E
//! u v w      (E lines, 0-based ids, positive decimal weight)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::WeightedGraph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing `V E` header".into(),
    })?;
    let mut fields = header.split_whitespace();
    let vertex_count: usize = parse_field(fields.next(), header_line, "vertex count")?;
    let edge_count: usize = parse_field(fields.next(), header_line, "edge count")?;
    if fields.next().is_some() {
        return Err(Error::Parse {
            line: header_line,
            message: "header must be exactly `V E`".into(),
        });
    }

    let mut edges = Vec::with_capacity(edge_count);
    for (line, text) in lines {
        let mut f = text.split_whitespace();
        let u: usize = parse_field(f.next(), line, "u")?;
        let v: usize = parse_field(f.next(), line, "v")?;
        let w: f64 = parse_field(f.next(), line, "w")?;
        if f.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "edge lines must be `u v w`".into(),
            });
        }
        edges.push((u, v, w));
    }
    if edges.len() != edge_count {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header declares {edge_count} edges, found {}", edges.len()),
        });
    }
    WeightedGraph::new(vertex_count, edges)
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    let raw = field.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse {what} from `{raw}`"),
    })
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_graph(&text)
}

/// Serialises `graph`; each entry of `comments` becomes a `# ` line.
/// Weights use the shortest representation that parses back exactly.
pub fn write_graph(graph: &WeightedGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", graph.vertex_count(), graph.edge_count());
    for e in graph.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
    }
    out
}

pub fn write_graph_file(
    graph: &WeightedGraph,
    comments: &[String],
    path: impl AsRef<Path>,
) -> Result<()> {
    std::fs::write(path.as_ref(), write_graph(graph, comments))
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

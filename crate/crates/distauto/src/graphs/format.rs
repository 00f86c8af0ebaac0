//! Line-oriented text format for labelled graphs.
//!
//! ```text
//! # comment
//! graph plain
//! node 0 0
//! node 1 1
//! edge 0 1
//! ```
//!
//! Snowball nodes carry two extra fields: `node 3 0 +1 1`. Node identifiers
//! must be exactly `0..n-1`; serialization and parsing round-trip.

use std::fmt::Write as _;

use super::{Alphabet, GraphError, LabelledGraph, NodeLabel};

/// Error with the 1-based input line it was found on (line 0 for whole-graph
/// problems such as disconnectedness).
#[derive(Debug, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Parse the graph text format.
pub fn parse_graph(input: &str) -> Result<LabelledGraph, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut nodes: Vec<(usize, usize, NodeLabel)> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "graph" => {
                if alphabet.is_some() {
                    return err(lineno, "duplicate graph header");
                }
                match fields.get(1) {
                    Some(&"plain") => alphabet = Some(Alphabet::Plain),
                    Some(&"snowball") => alphabet = Some(Alphabet::Snowball),
                    _ => {
                        return err(
                            lineno,
                            "expected `graph plain` or `graph snowball`",
                        )
                    }
                }
            }
            "node" => {
                let Some(alphabet) = alphabet else {
                    return err(lineno, "node before graph header");
                };
                let id: usize = match fields.get(1).map(|s| s.parse()) {
                    Some(Ok(id)) => id,
                    _ => return err(lineno, "expected `node <id> <numbering>`"),
                };
                let numbering: u8 = match fields.get(2).map(|s| s.parse()) {
                    Some(Ok(n)) if n < 3 => n,
                    _ => return err(lineno, "numbering must be 0, 1 or 2"),
                };
                let label = match alphabet {
                    Alphabet::Plain => {
                        if fields.len() != 3 {
                            return err(
                                lineno,
                                "plain node takes exactly one label field",
                            );
                        }
                        NodeLabel::plain(numbering)
                    }
                    Alphabet::Snowball => {
                        if fields.len() != 5 {
                            return err(
                                lineno,
                                "snowball node needs numbering, facing and \
                                 ball fields",
                            );
                        }
                        let facing = match fields[3] {
                            "+1" => 1,
                            "-1" => -1,
                            _ => {
                                return err(lineno, "facing must be +1 or -1")
                            }
                        };
                        let ball: u8 = match fields[4].parse() {
                            Ok(b) if b < 2 => b,
                            _ => return err(lineno, "ball bit must be 0 or 1"),
                        };
                        NodeLabel::snowball(numbering, facing, ball)
                    }
                };
                if nodes.iter().any(|&(other, _, _)| other == id) {
                    return err(lineno, format!("duplicate node id {id}"));
                }
                nodes.push((id, lineno, label));
            }
            "edge" => {
                if alphabet.is_none() {
                    return err(lineno, "edge before graph header");
                }
                let (u, v) = match (
                    fields.get(1).map(|s| s.parse()),
                    fields.get(2).map(|s| s.parse()),
                ) {
                    (Some(Ok(u)), Some(Ok(v))) if fields.len() == 3 => (u, v),
                    _ => return err(lineno, "expected `edge <id> <id>`"),
                };
                edges.push((u, v));
            }
            other => return err(lineno, format!("unknown directive `{other}`")),
        }
    }

    if alphabet.is_none() {
        return err(0, "missing graph header");
    }
    let n = nodes.len();
    let mut labels = vec![None; n];
    for &(id, lineno, label) in &nodes {
        if id >= n {
            return err(
                lineno,
                format!("node ids must be dense 0..{n}, found {id}"),
            );
        }
        labels[id] = Some(label);
    }
    let labels: Vec<NodeLabel> =
        labels.into_iter().map(|l| l.expect("dense ids")).collect();
    LabelledGraph::new(labels, edges)
        .map_err(|e: GraphError| ParseError { line: 0, message: e.to_string() })
}

/// Serialize a graph; `parse_graph` inverts this exactly.
pub fn serialize_graph(g: &LabelledGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}", g.alphabet()).unwrap();
    for (v, label) in g.labels().iter().enumerate() {
        writeln!(out, "node {v} {label}").unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    out
}

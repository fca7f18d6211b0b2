use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::objectives::Graph;
use crate::scalar::Scalar;

/// Graph parsed from an edge list together with the original vertex labels.
#[derive(Clone, Debug)]
pub struct LoadedGraph<T> {
    pub graph: Graph<T>,
    /// `labels[v]` is the label that dense vertex `v` had in the file.
    pub labels: Vec<u64>,
}

pub fn load_edge_list<T: Scalar>(path: impl AsRef<Path>) -> Result<Graph<T>> {
    let file = File::open(path)?;
    Ok(read_edge_list(file)?.graph)
}

/// Parses whitespace-separated `u v` or `u v w` lines.
///
/// Lines starting with `#` and blank lines are skipped. Labels are remapped to
/// `0..n` in order of first appearance, the graph is symmetrized, repeated
/// edges keep their first weight and self-loops are dropped.
pub fn read_edge_list<T: Scalar, R: Read>(reader: R) -> Result<LoadedGraph<T>> {
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut dense = |label: u64| match index.entry(label) {
        Entry::Occupied(e) => *e.get(),
        Entry::Vacant(e) => {
            labels.push(label);
            *e.insert(labels.len() - 1)
        }
    };

    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 2 or 3 fields, found {}", fields.len()),
            });
        }
        let label = |s: &str| {
            s.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex label {s:?}"),
            })
        };
        let (a, b) = (label(fields[0])?, label(fields[1])?);
        let w = match fields.get(2) {
            None => T::one(),
            Some(s) => {
                let w: f64 = s.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid weight {s:?}"),
                })?;
                if !(w > 0.0) || !w.is_finite() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("weight must be positive, got {w}"),
                    });
                }
                T::of(w)
            }
        };
        let (u, v) = (dense(a), dense(b));
        if u != v {
            edges.push((u, v, w));
        }
    }

    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok(LoadedGraph { graph, labels })
}

/// Writes each undirected edge once; the weight column is omitted for unit weights.
pub fn write_edge_list<T: Scalar, W: Write>(graph: &Graph<T>, mut out: W) -> Result<()> {
    writeln!(out, "# nodes: {} edges: {}", graph.vertex_count(), graph.edge_count())?;
    for (u, v, w) in graph.edges() {
        if w == T::one() {
            writeln!(out, "{u} {v}")?;
        } else {
            writeln!(out, "{u} {v} {w}")?;
        }
    }
    out.flush()?;
    Ok(())
}

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::oracle::ElementId;
use crate::scalar::Scalar;

/// Undirected weighted graph stored as symmetric adjacency lists.
///
/// Invariants: `(u, v, w)` is stored iff `(v, u, w)` is, there are no
/// self-loops, every weight is positive and there are no parallel edges.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph<T> {
    adjacency: Vec<Vec<(ElementId, T)>>,
    edge_count: usize,
}

impl<T: Scalar> Graph<T> {
    /// Graph on `n` vertices. Parallel edges keep the first occurrence.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        let mut edge_count = 0;
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::Graph(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            if !(w > T::zero()) || !w.is_finite() {
                return Err(Error::Graph(format!("edge ({u}, {v}) has non-positive weight {w}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                continue;
            }
            adjacency[u].push((ElementId(v), w));
            adjacency[v].push((ElementId(u), w));
            edge_count += 1;
        }
        Ok(Graph {
            adjacency,
            edge_count,
        })
    }

    /// Unit-weight graph.
    pub fn unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, T::one())))
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::unweighted(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::unweighted(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::unweighted(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: ElementId) -> &[(ElementId, T)] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: ElementId) -> usize {
        self.adjacency[v.0].len()
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`, ordered by `u`
    /// and then by insertion.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            adj.iter()
                .filter(move |(v, _)| u < v.0)
                .map(move |&(v, w)| (u, v.0, w))
        })
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.adjacency
            .iter()
            .all(|adj| adj.iter().all(|&(_, w)| w == T::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let g: Graph<f64> = Graph::complete(5);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.edges().count(), 10);
        assert!(g.is_unit_weighted());
    }

    #[test]
    fn symmetric_and_deduplicated() {
        let g: Graph<f64> = Graph::unweighted(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        for (u, adj) in (0..3).map(|u| (u, g.neighbors(ElementId(u)))) {
            for &(v, w) in adj {
                assert!(g.neighbors(v).contains(&(ElementId(u), w)));
            }
        }
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(Graph::<f64>::unweighted(2, [(0, 0)]).is_err());
        assert!(Graph::<f64>::unweighted(2, [(0, 2)]).is_err());
        assert!(Graph::<f64>::from_edges(2, [(0, 1, 0.0)]).is_err());
        assert!(Graph::<f64>::from_edges(2, [(0, 1, -1.0)]).is_err());
    }
}

use super::{ordered, UnionFind, WeightedGraph};
use crate::error::{Error, Result};

/// A spanning tree of a [`WeightedGraph`] with cached degrees and weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    edges: Vec<(usize, usize)>,
    degree: Vec<usize>,
    total_weight: f64,
}

impl SpanningTree {
    /// Validates `edges` against `graph` and builds the tree. Edge order is
    /// preserved as given (after normalising each pair to `u < v`).
    pub fn new(graph: &WeightedGraph, edges: Vec<(usize, usize)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().map(|(a, b)| ordered(a, b)).collect();
        let total_weight = tree_weight(graph, &edges)?;
        if !is_spanning_tree(graph, &edges) {
            return Err(Error::InconsistentTree(format!(
                "{} edges do not form a spanning tree on {} vertices",
                edges.len(),
                graph.vertex_count()
            )));
        }
        let mut degree = vec![0; graph.vertex_count()];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        Ok(Self {
            edges,
            degree,
            total_weight,
        })
    }

    /// Builds a tree from edges already known to span `graph`.
    pub(crate) fn from_valid_edges(graph: &WeightedGraph, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0; graph.vertex_count()];
        let mut total_weight = 0.0;
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
            total_weight += graph.weight(u, v).expect("edge present in graph");
        }
        debug_assert!(is_spanning_tree(graph, &edges));
        Self {
            edges,
            degree,
            total_weight,
        }
    }

    /// Edges in construction order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges sorted lexicographically, for set comparisons.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn vertex_count(&self) -> usize {
        self.degree.len()
    }

    /// True if both trees contain the same edge set.
    pub fn same_edges(&self, other: &SpanningTree) -> bool {
        self.sorted_edges() == other.sorted_edges()
    }
}

/// Sum of the weights of `edges` in `graph`; an empty set sums to 0.
pub fn tree_weight(graph: &WeightedGraph, edges: &[(usize, usize)]) -> Result<f64> {
    edges.iter().try_fold(0.0, |acc, &(u, v)| {
        graph
            .weight(u, v)
            .map(|w| acc + w)
            .ok_or_else(|| Error::InconsistentTree(format!("edge ({u}, {v}) is not in the graph")))
    })
}

/// True iff `edges` has V−1 members, all present in `graph`, and connects
/// every vertex without a cycle.
pub fn is_spanning_tree(graph: &WeightedGraph, edges: &[(usize, usize)]) -> bool {
    let n = graph.vertex_count();
    if edges.len() != n - 1 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        if u >= n || v >= n || graph.weight(u, v).is_none() || !uf.union(u, v) {
            return false;
        }
    }
    uf.components() == 1
}

/// Kruskal-style scan: walks `candidates` in the given order and keeps every
/// edge that joins two components and, when `max_degree` is set, whose
/// endpoints both have degree below the cap. Stops at V−1 edges.
///
/// Errors with [`Error::NoSpanningTree`] (unconstrained) or
/// [`Error::ConstraintUnsatisfiedByGreedy`] when the scan runs out first.
pub fn kruskal_scan<I>(
    graph: &WeightedGraph,
    candidates: I,
    max_degree: Option<usize>,
) -> Result<SpanningTree>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let n = graph.vertex_count();
    let cap = max_degree.unwrap_or(usize::MAX);
    let mut uf = UnionFind::new(n);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    for (u, v) in candidates {
        if edges.len() == n - 1 {
            break;
        }
        if degree[u] >= cap || degree[v] >= cap || graph.weight(u, v).is_none() {
            continue;
        }
        if uf.union(u, v) {
            degree[u] += 1;
            degree[v] += 1;
            edges.push(ordered(u, v));
        }
    }
    if edges.len() != n - 1 {
        return Err(match max_degree {
            Some(delta) => Error::ConstraintUnsatisfiedByGreedy { delta },
            None => Error::NoSpanningTree,
        });
    }
    Ok(SpanningTree::from_valid_edges(graph, edges))
}

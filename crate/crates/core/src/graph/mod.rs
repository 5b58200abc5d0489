//! Weighted undirected graphs and the spanning-tree machinery built on them.

mod io;
pub mod prufer;
pub mod rng;
mod tree;
mod union_find;

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use io::{parse_graph, read_graph, write_graph, write_graph_file};
pub use prufer::{enumerate_spanning_trees, PruferCode, SpanningTrees, ENUMERATION_CAP};
pub use rng::{instance_seed, SplitMix64};
pub use tree::{is_spanning_tree, kruskal_scan, tree_weight, SpanningTree};
pub use union_find::UnionFind;

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn key(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// Normalises an unordered vertex pair to `(min, max)`.
pub fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Undirected graph with strictly positive edge weights.
///
/// Stored both as a dense symmetric weight matrix (0 marks a missing edge)
/// and as a lexicographically sorted edge list.
#[derive(Clone, PartialEq)]
pub struct WeightedGraph {
    vertex_count: usize,
    weights: Vec<f64>,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Builds a graph from `(u, v, w)` triples. Endpoint order is irrelevant.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if vertex_count < 2 {
            return Err(Error::InvalidArgument(format!(
                "a graph needs at least 2 vertices, got {vertex_count}"
            )));
        }
        let mut weights = vec![0.0; vertex_count * vertex_count];
        let mut list = Vec::new();
        for (a, b, w) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            if !(w.is_finite() && w > 0.0) {
                let (u, v) = ordered(a, b);
                return Err(Error::InvalidWeight { u, v, weight: w });
            }
            let (u, v) = ordered(a, b);
            if weights[u * vertex_count + v] != 0.0 {
                return Err(Error::InvalidArgument(format!("duplicate edge ({u}, {v})")));
            }
            weights[u * vertex_count + v] = w;
            weights[v * vertex_count + u] = w;
            list.push(Edge { u, v, w });
        }
        list.sort_by_key(Edge::key);
        Ok(Self {
            vertex_count,
            weights,
            edges: list,
        })
    }

    /// Complete graph with integer weights drawn uniformly from
    /// `[w_min, w_max]`, one draw per pair in lexicographic `(u, v)` order.
    pub fn random_complete(vertex_count: usize, w_min: u64, w_max: u64, seed: u64) -> Result<Self> {
        random_complete_graph(vertex_count, w_min, w_max, seed)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Weight of `(u, v)`, or `None` when the edge is absent.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.vertex_count || v >= self.vertex_count {
            return None;
        }
        let w = self.weights[u * self.vertex_count + v];
        (w > 0.0).then_some(w)
    }

    /// Row-major weight matrix, 0 for non-edges and on the diagonal.
    pub fn weight_matrix(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.vertex_count * (self.vertex_count - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.components() == 1
    }

    /// True when no two edges share a weight.
    pub fn has_distinct_weights(&self) -> bool {
        let mut ws: Vec<f64> = self.edges.iter().map(|e| e.w).collect();
        ws.sort_by(f64::total_cmp);
        ws.windows(2).all(|p| p[0] != p[1])
    }

    /// Returns a copy with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.vertex_count,
            self.edges.iter().map(|e| (e.u, e.v, e.w * factor)),
        )
    }

    /// Short content hash used to tag derived objects.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.vertex_count as u64).to_le_bytes());
        for e in &self.edges {
            hasher.update((e.u as u64).to_le_bytes());
            hasher.update((e.v as u64).to_le_bytes());
            hasher.update(e.w.to_bits().to_le_bytes());
        }
        hasher.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("vertex_count", &self.vertex_count)
            .field("edges", &self.edges)
            .finish()
    }
}

pub fn random_complete_graph(
    vertex_count: usize,
    w_min: u64,
    w_max: u64,
    seed: u64,
) -> Result<WeightedGraph> {
    if vertex_count < 2 {
        return Err(Error::InvalidArgument(format!(
            "vertex count must be at least 2, got {vertex_count}"
        )));
    }
    if w_min < 1 {
        return Err(Error::InvalidArgument("w_min must be at least 1".into()));
    }
    if w_min > w_max {
        return Err(Error::InvalidArgument(format!(
            "empty weight range [{w_min}, {w_max}]"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(vertex_count * (vertex_count - 1) / 2);
    for u in 0..vertex_count {
        for v in (u + 1)..vertex_count {
            edges.push((u, v, rng.uniform_inclusive(w_min, w_max) as f64));
        }
    }
    WeightedGraph::new(vertex_count, edges)
}

/// Like [`random_complete_graph`] but redraws until all edge weights are
/// distinct. The first attempt uses `seed`; retries use successive outputs of
/// `SplitMix64::new(seed)`. Returns the graph and the seed that produced it.
pub fn random_distinct_complete_graph(
    vertex_count: usize,
    w_min: u64,
    w_max: u64,
    seed: u64,
) -> Result<(WeightedGraph, u64)> {
    let pairs = (vertex_count * vertex_count.saturating_sub(1) / 2) as u64;
    if w_max.saturating_sub(w_min).saturating_add(1) < pairs {
        return Err(Error::InvalidArgument(format!(
            "range [{w_min}, {w_max}] cannot hold {pairs} distinct weights"
        )));
    }
    let mut retry_seeds = SplitMix64::new(seed);
    let mut s = seed;
    loop {
        let g = random_complete_graph(vertex_count, w_min, w_max, s)?;
        if g.has_distinct_weights() {
            return Ok((g, s));
        }
        s = retry_seeds.next_u64();
    }
}

/// Qubits needed to encode `vertex_count` basis states in binary: ⌈log₂ V⌉.
pub fn qubit_count(vertex_count: u64) -> u32 {
    assert!(vertex_count >= 2, "qubit_count needs at least 2 vertices");
    u64::BITS - (vertex_count - 1).leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_unit_range() {
        for seed in [0, 1, u64::MAX] {
            let g = random_complete_graph(2, 1, 1, seed).unwrap();
            assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 1.0 }]);
        }
    }

    #[test]
    fn random_graph_sizes_and_ranges() {
        let g = random_complete_graph(4, 1, 20, 7).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.edges().iter().all(|e| (1.0..=20.0).contains(&e.w)));

        let g = random_complete_graph(5, 1, 53_560, 1).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert!(g.edges().iter().all(|e| (1.0..=53_560.0).contains(&e.w)));
        assert!(g.edges().iter().all(|e| e.w.fract() == 0.0));
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = random_complete_graph(12, 1, 20, 99).unwrap();
        let b = random_complete_graph(12, 1, 20, 99).unwrap();
        let c = random_complete_graph(12, 1, 20, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_graph_rejects_bad_arguments() {
        assert!(matches!(
            random_complete_graph(1, 1, 20, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            random_complete_graph(4, 0, 20, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            random_complete_graph(4, 5, 4, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn weights_are_symmetric_with_zero_diagonal() {
        let g = random_complete_graph(7, 1, 9, 5).unwrap();
        let n = g.vertex_count();
        let m = g.weight_matrix();
        for u in 0..n {
            assert_eq!(m[u * n + u], 0.0);
            for v in 0..n {
                assert_eq!(m[u * n + v], m[v * n + u]);
            }
        }
        for e in g.edges() {
            assert!(e.u < e.v);
            assert_eq!(g.weight(e.u, e.v), Some(e.w));
        }
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, 0.0)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, -2.0)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(3, [(0, 1, f64::INFINITY)]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(WeightedGraph::new(3, [(0, 0, 1.0)]).is_err());
        assert!(WeightedGraph::new(3, [(0, 5, 1.0)]).is_err());
        assert!(WeightedGraph::new(3, [(0, 1, 1.0), (1, 0, 2.0)]).is_err());
    }

    #[test]
    fn distinct_weight_generation() {
        let (g, _) = random_distinct_complete_graph(10, 1000, 9999, 3).unwrap();
        assert!(g.has_distinct_weights());
        assert!(random_distinct_complete_graph(10, 1, 20, 0).is_err());
    }

    #[test]
    fn qubit_counts_for_application_sizes() {
        assert_eq!(qubit_count(100), 7);
        assert_eq!(qubit_count(175_000_000), 28);
        assert_eq!(qubit_count(500), 9);
        assert_eq!(qubit_count(30), 5);
        assert_eq!(qubit_count(14_099), 14);
        assert_eq!(qubit_count(2), 1);
        assert_eq!(qubit_count(4), 2);
        assert_eq!(qubit_count(5), 3);
    }
}

//! Prüfer codes: the bijection between labelled trees on `n` vertices and
//! sequences of length `n - 2` over `0..n`, used to enumerate all `n^(n-2)`
//! spanning trees of a complete graph.

use super::{ordered, SpanningTree, WeightedGraph};
use crate::error::{Error, Result};

/// Largest vertex count accepted by exhaustive enumeration (9^7 ≈ 4.8M trees).
pub const ENUMERATION_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PruferCode {
    vertex_count: usize,
    sequence: Vec<usize>,
}

impl PruferCode {
    pub fn new(vertex_count: usize, sequence: Vec<usize>) -> Result<Self> {
        if vertex_count < 2 || sequence.len() != vertex_count - 2 {
            return Err(Error::InvalidArgument(format!(
                "a Prüfer code for {vertex_count} vertices has length {}",
                vertex_count.saturating_sub(2)
            )));
        }
        if let Some(&bad) = sequence.iter().find(|&&x| x >= vertex_count) {
            return Err(Error::InvalidArgument(format!(
                "Prüfer entry {bad} out of range 0..{vertex_count}"
            )));
        }
        Ok(Self {
            vertex_count,
            sequence,
        })
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Position of this code in lexicographic order (the code read as a
    /// base-`n` number).
    pub fn index(&self) -> u64 {
        let n = self.vertex_count as u64;
        self.sequence.iter().fold(0, |acc, &x| acc * n + x as u64)
    }

    /// Encodes the tree given by `edges` on `vertex_count` vertices.
    pub fn encode(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count < 2 || edges.len() != vertex_count - 1 {
            return Err(Error::InconsistentTree(format!(
                "expected {} edges, got {}",
                vertex_count.saturating_sub(1),
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count || a == b {
                return Err(Error::InconsistentTree(format!("bad edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; vertex_count];
        let mut sequence = Vec::with_capacity(vertex_count - 2);
        for _ in 0..vertex_count - 2 {
            let leaf = (0..vertex_count)
                .find(|&x| !removed[x] && degree[x] == 1)
                .ok_or_else(|| Error::InconsistentTree("edge set contains a cycle".into()))?;
            let parent = adj[leaf]
                .iter()
                .copied()
                .find(|&y| !removed[y])
                .expect("a leaf has one live neighbour");
            sequence.push(parent);
            removed[leaf] = true;
            degree[leaf] = 0;
            degree[parent] -= 1;
        }
        let rest: Vec<usize> = (0..vertex_count).filter(|&x| !removed[x]).collect();
        if rest.len() != 2 || !adj[rest[0]].contains(&rest[1]) {
            return Err(Error::InconsistentTree("edge set is not a tree".into()));
        }
        Ok(Self {
            vertex_count,
            sequence,
        })
    }

    /// Decodes into the `n - 1` tree edges, each normalised to `u < v`.
    pub fn decode(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.vertex_count - 1);
        let mut degree = vec![0; self.vertex_count];
        decode_into(self.vertex_count, &self.sequence, &mut degree, &mut edges);
        edges
    }
}

/// Linear-time decoding into caller-owned buffers. `degree` must have length
/// `n` and is overwritten.
pub(crate) fn decode_into(
    n: usize,
    code: &[usize],
    degree: &mut [usize],
    edges: &mut Vec<(usize, usize)>,
) {
    edges.clear();
    degree.fill(1);
    for &x in code {
        degree[x] += 1;
    }
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a tree has a leaf");
    let mut leaf = ptr;
    for &x in code {
        edges.push(ordered(leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push(ordered(leaf, n - 1));
}

/// Advances `code` to its lexicographic successor; `false` after the last.
pub(crate) fn next_code(code: &mut [usize], n: usize) -> bool {
    for slot in code.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Iterator over every spanning tree of a complete graph, in lexicographic
/// Prüfer-code order. Items are `(tree_id, tree)` where `tree_id` is the
/// code's index.
pub struct SpanningTrees<'g> {
    graph: &'g WeightedGraph,
    code: Vec<usize>,
    degree: Vec<usize>,
    index: u64,
    done: bool,
}

impl Iterator for SpanningTrees<'_> {
    type Item = (u64, SpanningTree);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.graph.vertex_count();
        let mut edges = Vec::with_capacity(n - 1);
        decode_into(n, &self.code, &mut self.degree, &mut edges);
        let item = (self.index, SpanningTree::from_valid_edges(self.graph, edges));
        self.index += 1;
        self.done = !next_code(&mut self.code, n);
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        if self.done {
            return (0, Some(0));
        }
        let n = self.graph.vertex_count() as u64;
        let left = (n.pow(n as u32 - 2) - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanningTrees<'_> {}

/// Streams all `V^(V-2)` spanning trees of a complete graph.
pub fn enumerate_spanning_trees(graph: &WeightedGraph) -> Result<SpanningTrees<'_>> {
    enumerate_with_cap(graph, ENUMERATION_CAP)
}

pub fn enumerate_with_cap(graph: &WeightedGraph, cap: usize) -> Result<SpanningTrees<'_>> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "enumeration is capped at {cap} vertices, graph has {n}"
        )));
    }
    if !graph.is_complete() {
        return Err(Error::InvalidArgument(
            "spanning-tree enumeration requires a complete graph".into(),
        ));
    }
    Ok(SpanningTrees {
        graph,
        code: vec![0; n - 2],
        degree: vec![0; n],
        index: 0,
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_spanning_tree, random_complete_graph};
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn cayley_counts() {
        for (n, count) in [(2, 1), (3, 3), (4, 16), (5, 125)] {
            let g = random_complete_graph(n, 1, 20, 1).unwrap();
            assert_eq!(enumerate_spanning_trees(&g).unwrap().count(), count);
        }
    }

    #[test]
    fn enumeration_is_distinct_ordered_and_valid() {
        for n in 3..=5 {
            let g = random_complete_graph(n, 1, 20, n as u64).unwrap();
            let mut seen = HashSet::new();
            for (expected_id, (id, tree)) in enumerate_spanning_trees(&g).unwrap().enumerate() {
                assert_eq!(id, expected_id as u64);
                assert!(is_spanning_tree(&g, tree.edges()));
                assert!(seen.insert(tree.sorted_edges()));
                let code = PruferCode::encode(n, tree.edges()).unwrap();
                assert_eq!(code.index(), id);
            }
            assert_eq!(seen.len(), n.pow(n as u32 - 2));
        }
    }

    #[test]
    fn cap_and_completeness() {
        let g = random_complete_graph(10, 1, 20, 0).unwrap();
        assert!(matches!(
            enumerate_spanning_trees(&g),
            Err(Error::ResourceLimit(_))
        ));
        let sparse = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(enumerate_spanning_trees(&sparse).is_err());
    }

    #[test]
    fn known_decoding() {
        // Sequence [3, 3] on 4 vertices is the star at 3.
        let code = PruferCode::new(4, vec![3, 3]).unwrap();
        let mut e = code.decode();
        e.sort_unstable();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3)]);
        assert!(PruferCode::new(4, vec![4, 0]).is_err());
        assert!(PruferCode::new(4, vec![0]).is_err());
    }

    #[test]
    fn encode_rejects_non_trees() {
        assert!(PruferCode::encode(4, &[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(PruferCode::encode(4, &[(0, 1), (1, 2)]).is_err());
    }

    proptest! {
        #[test]
        fn decode_then_encode_is_identity(n in 3usize..9, raw in proptest::collection::vec(0usize..1000, 7)) {
            let seq: Vec<usize> = raw[..n - 2].iter().map(|x| x % n).collect();
            let code = PruferCode::new(n, seq).unwrap();
            let edges = code.decode();
            prop_assert_eq!(PruferCode::encode(n, &edges).unwrap(), code);
        }
    }
}

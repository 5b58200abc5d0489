//! Classical reference algorithms: exact MST, degree-constrained greedy
//! heuristics, an ant-colony heuristic and exact DCMST oracles.

mod aco;
mod exact;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{kruskal_scan, ordered, SpanningTree, WeightedGraph};

pub use aco::{ant_colony_mdc, AcoParams};
pub use exact::{
    branch_and_bound_dcmst, enumerate_dcmst, exact_dcmst, exact_optima_by_delta,
    BRANCH_AND_BOUND_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineLabel {
    Kruskal,
    Prim,
    KruskalMdc,
    PrimMdc,
    GreedyMdc,
    AntColonyMdc,
    ExactDcmst,
}

impl BaselineLabel {
    pub const ALL: [BaselineLabel; 7] = [
        BaselineLabel::Kruskal,
        BaselineLabel::Prim,
        BaselineLabel::KruskalMdc,
        BaselineLabel::PrimMdc,
        BaselineLabel::GreedyMdc,
        BaselineLabel::AntColonyMdc,
        BaselineLabel::ExactDcmst,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BaselineLabel::Kruskal => "kruskal",
            BaselineLabel::Prim => "prim",
            BaselineLabel::KruskalMdc => "kruskal_mdc",
            BaselineLabel::PrimMdc => "prim_mdc",
            BaselineLabel::GreedyMdc => "greedy_mdc",
            BaselineLabel::AntColonyMdc => "ant_colony_mdc",
            BaselineLabel::ExactDcmst => "exact_dcmst",
        }
    }

    /// True for the algorithms that take a maximum degree.
    pub fn is_constrained(&self) -> bool {
        !matches!(self, BaselineLabel::Kruskal | BaselineLabel::Prim)
    }

    /// Runs the algorithm. `delta` is ignored by the unconstrained ones and
    /// `seed` by all but the ant colony.
    pub fn run(&self, graph: &WeightedGraph, delta: Option<usize>, seed: u64) -> Result<SpanningTree> {
        let need_delta = || {
            delta.ok_or_else(|| {
                Error::InvalidArgument(format!("{} needs a maximum degree", self.as_str()))
            })
        };
        match self {
            BaselineLabel::Kruskal => kruskal(graph),
            BaselineLabel::Prim => prim(graph),
            BaselineLabel::KruskalMdc => kruskal_mdc(graph, need_delta()?),
            BaselineLabel::PrimMdc => prim_mdc(graph, need_delta()?),
            BaselineLabel::GreedyMdc => greedy_mdc(graph, need_delta()?),
            BaselineLabel::AntColonyMdc => {
                ant_colony_mdc(graph, need_delta()?, &AcoParams::for_graph(graph), seed)
            }
            BaselineLabel::ExactDcmst => exact_dcmst(graph, need_delta()?),
        }
    }
}

impl fmt::Display for BaselineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaselineLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaselineLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm label '{s}'")))
    }
}

pub(crate) fn check_delta(delta: usize) -> Result<()> {
    if delta < 2 {
        return Err(Error::InfeasibleConstraint(format!(
            "maximum degree must be at least 2, got {delta}"
        )));
    }
    Ok(())
}

/// Edges ordered by (weight, u, v) ascending.
pub(crate) fn weight_order(graph: &WeightedGraph) -> Vec<(usize, usize, f64)> {
    let mut edges: Vec<_> = graph.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    edges.sort_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    edges
}

pub fn kruskal(graph: &WeightedGraph) -> Result<SpanningTree> {
    kruskal_scan(graph, weight_order(graph).into_iter().map(|(u, v, _)| (u, v)), None)
}

/// Weight-ascending greedy with degree caps.
pub fn kruskal_mdc(graph: &WeightedGraph, delta: usize) -> Result<SpanningTree> {
    check_delta(delta)?;
    kruskal_scan(
        graph,
        weight_order(graph).into_iter().map(|(u, v, _)| (u, v)),
        Some(delta),
    )
}

/// Tree growth that repeatedly attaches the cheapest edge from a tree vertex
/// with degree below `cap` to a vertex outside the tree. Ties go to the
/// smallest (weight, min endpoint, max endpoint).
fn grow(graph: &WeightedGraph, start: &[(usize, usize)], cap: usize) -> Option<Vec<(usize, usize)>> {
    let n = graph.vertex_count();
    let mut in_tree = vec![false; n];
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    if start.is_empty() {
        in_tree[0] = true;
    }
    for &(u, v) in start {
        in_tree[u] = true;
        in_tree[v] = true;
        degree[u] += 1;
        degree[v] += 1;
        edges.push(ordered(u, v));
    }
    while edges.len() < n - 1 {
        let mut best: Option<(f64, (usize, usize), usize, usize)> = None;
        for i in (0..n).filter(|&i| in_tree[i] && degree[i] < cap) {
            for j in (0..n).filter(|&j| !in_tree[j]) {
                if let Some(w) = graph.weight(i, j) {
                    let key = ordered(i, j);
                    let better = match best {
                        None => true,
                        Some((bw, bk, _, _)) => w < bw || (w == bw && key < bk),
                    };
                    if better {
                        best = Some((w, key, i, j));
                    }
                }
            }
        }
        let (_, key, i, j) = best?;
        in_tree[j] = true;
        degree[i] += 1;
        degree[j] += 1;
        edges.push(key);
    }
    Some(edges)
}

/// Prim's algorithm from vertex 0, O(V²) scans.
pub fn prim(graph: &WeightedGraph) -> Result<SpanningTree> {
    grow(graph, &[], usize::MAX)
        .map(|edges| SpanningTree::from_valid_edges(graph, edges))
        .ok_or(Error::NoSpanningTree)
}

/// Prim's expansion from vertex 0 where tree vertices of degree `delta`
/// cannot take new neighbours.
pub fn prim_mdc(graph: &WeightedGraph, delta: usize) -> Result<SpanningTree> {
    check_delta(delta)?;
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    grow(graph, &[], delta)
        .map(|edges| SpanningTree::from_valid_edges(graph, edges))
        .ok_or(Error::ConstraintUnsatisfiedByGreedy { delta })
}

/// Nearest-neighbour growth seeded with the globally cheapest edge instead of
/// a fixed start vertex, then extended like [`prim_mdc`].
pub fn greedy_mdc(graph: &WeightedGraph, delta: usize) -> Result<SpanningTree> {
    check_delta(delta)?;
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    let (u, v, _) = weight_order(graph)[0];
    grow(graph, &[(u, v)], delta)
        .map(|edges| SpanningTree::from_valid_edges(graph, edges))
        .ok_or(Error::ConstraintUnsatisfiedByGreedy { delta })
}

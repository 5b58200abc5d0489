//! Exact degree-constrained MST oracles: exhaustive Prüfer enumeration for
//! small graphs and branch-and-bound over edge inclusion for medium ones.

use super::{check_delta, kruskal_mdc, weight_order};
use crate::error::{Error, Result};
use crate::graph::prufer::{decode_into, next_code};
use crate::graph::{SpanningTree, UnionFind, WeightedGraph, ENUMERATION_CAP};

/// Largest vertex count accepted by the branch-and-bound oracle.
pub const BRANCH_AND_BOUND_CAP: usize = 20;

fn no_feasible_tree(delta: usize) -> Error {
    Error::InfeasibleConstraint(format!("no spanning tree has maximum degree ≤ {delta}"))
}

/// Visits every labelled tree on the graph's vertices whose edges all exist,
/// passing the tree's maximum degree, weight and edges.
fn for_each_tree<F>(graph: &WeightedGraph, mut visit: F) -> Result<()>
where
    F: FnMut(usize, f64, &[(usize, usize)]),
{
    let n = graph.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::ResourceLimit(format!(
            "enumeration is capped at {ENUMERATION_CAP} vertices, graph has {n}"
        )));
    }
    let mut code = vec![0usize; n - 2];
    let mut count = vec![0usize; n];
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    loop {
        count.fill(0);
        for &x in &code {
            count[x] += 1;
        }
        let max_degree = 1 + count.iter().copied().max().unwrap_or(0);
        decode_into(n, &code, &mut degree, &mut edges);
        let mut weight = 0.0;
        let mut present = true;
        for &(u, v) in &edges {
            match graph.weight(u, v) {
                Some(w) => weight += w,
                None => {
                    present = false;
                    break;
                }
            }
        }
        if present {
            visit(max_degree, weight, &edges);
        }
        if !next_code(&mut code, n) {
            return Ok(());
        }
    }
}

/// Minimum-weight tree with maximum degree ≤ `delta`, by enumerating all
/// Prüfer codes. Codes implying a degree above `delta` are rejected before
/// decoding. Ties go to the lowest code.
pub fn enumerate_dcmst(graph: &WeightedGraph, delta: usize) -> Result<SpanningTree> {
    check_delta(delta)?;
    let n = graph.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::ResourceLimit(format!(
            "enumeration is capped at {ENUMERATION_CAP} vertices, graph has {n}"
        )));
    }
    let mut code = vec![0usize; n - 2];
    let mut count = vec![0usize; n];
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    loop {
        count.fill(0);
        let mut feasible = true;
        for &x in &code {
            count[x] += 1;
            if count[x] >= delta {
                feasible = false;
                break;
            }
        }
        if feasible {
            decode_into(n, &code, &mut degree, &mut edges);
            let weight: Option<f64> = edges.iter().map(|&(u, v)| graph.weight(u, v)).sum();
            if let Some(w) = weight {
                if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                    best = Some((w, edges.clone()));
                }
            }
        }
        if !next_code(&mut code, n) {
            break;
        }
    }
    best.map(|(_, e)| SpanningTree::from_valid_edges(graph, e))
        .ok_or_else(|| no_feasible_tree(delta))
}

/// Optimum weight for every maximum degree from one enumeration pass.
/// Index `d` holds the optimum under maximum degree `d` (infinite when no
/// tree qualifies); the vector has length `V`.
pub fn exact_optima_by_delta(graph: &WeightedGraph) -> Result<Vec<f64>> {
    let n = graph.vertex_count();
    let mut best_at = vec![f64::INFINITY; n];
    for_each_tree(graph, |max_degree, weight, _| {
        if weight < best_at[max_degree] {
            best_at[max_degree] = weight;
        }
    })?;
    for d in 1..n {
        best_at[d] = best_at[d].min(best_at[d - 1]);
    }
    Ok(best_at)
}

struct Search<'a> {
    n: usize,
    delta: usize,
    edges: &'a [(usize, usize, f64)],
    degree: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    best_weight: f64,
    best_edges: Option<Vec<(usize, usize)>>,
}

impl Search<'_> {
    /// Weight of the cheapest completion ignoring degree caps among the
    /// remaining edges, skipping saturated vertices. `None` if the remaining
    /// edges cannot connect the forest.
    fn lower_bound(&self, from: usize, uf: &UnionFind) -> Option<f64> {
        let mut uf = uf.clone();
        let mut count = self.chosen.len();
        let mut sum = 0.0;
        for &(u, v, w) in &self.edges[from..] {
            if count == self.n - 1 {
                break;
            }
            if self.degree[u] < self.delta && self.degree[v] < self.delta && uf.union(u, v) {
                sum += w;
                count += 1;
            }
        }
        (count == self.n - 1).then_some(sum)
    }

    fn run(&mut self, from: usize, uf: &UnionFind, weight: f64) {
        if self.chosen.len() == self.n - 1 {
            if weight < self.best_weight {
                self.best_weight = weight;
                self.best_edges = Some(self.chosen.clone());
            }
            return;
        }
        match self.lower_bound(from, uf) {
            Some(lb) if weight + lb < self.best_weight => {}
            _ => return,
        }
        // Skip edges that cannot be added in this branch.
        let mut k = from;
        let mut uf_probe = uf.clone();
        while k < self.edges.len() {
            let (u, v, _) = self.edges[k];
            if self.degree[u] < self.delta
                && self.degree[v] < self.delta
                && !uf_probe.connected(u, v)
            {
                break;
            }
            k += 1;
        }
        if k == self.edges.len() {
            return;
        }
        let (u, v, w) = self.edges[k];
        let mut with = uf.clone();
        with.union(u, v);
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.chosen.push((u, v));
        self.run(k + 1, &with, weight + w);
        self.chosen.pop();
        self.degree[u] -= 1;
        self.degree[v] -= 1;
        self.run(k + 1, uf, weight);
    }
}

/// Minimum-weight tree with maximum degree ≤ `delta` by depth-first
/// include/exclude branching over the weight-sorted edges. Each node is
/// bounded by the MST of the remaining edges restricted to unsaturated
/// vertices; the `kruskal_mdc` tree seeds the incumbent.
pub fn branch_and_bound_dcmst(graph: &WeightedGraph, delta: usize) -> Result<SpanningTree> {
    check_delta(delta)?;
    let n = graph.vertex_count();
    if n > BRANCH_AND_BOUND_CAP {
        return Err(Error::ResourceLimit(format!(
            "branch-and-bound is capped at {BRANCH_AND_BOUND_CAP} vertices, graph has {n}"
        )));
    }
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    let edges = weight_order(graph);
    let incumbent = kruskal_mdc(graph, delta).ok();
    let mut search = Search {
        n,
        delta,
        edges: &edges,
        degree: vec![0; n],
        chosen: Vec::with_capacity(n - 1),
        best_weight: incumbent.as_ref().map_or(f64::INFINITY, SpanningTree::total_weight),
        best_edges: None,
    };
    search.run(0, &UnionFind::new(n), 0.0);
    match (search.best_edges, incumbent) {
        (Some(edges), _) => Ok(SpanningTree::from_valid_edges(graph, edges)),
        (None, Some(tree)) => Ok(tree),
        (None, None) => Err(no_feasible_tree(delta)),
    }
}

/// Exact DCMST: enumeration up to the enumeration cap, branch-and-bound up to
/// [`BRANCH_AND_BOUND_CAP`], resource-limit beyond.
pub fn exact_dcmst(graph: &WeightedGraph, delta: usize) -> Result<SpanningTree> {
    check_delta(delta)?;
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    if graph.vertex_count() <= ENUMERATION_CAP {
        enumerate_dcmst(graph, delta)
    } else {
        branch_and_bound_dcmst(graph, delta)
    }
}

//! Ant-colony heuristic for the degree-constrained MST.
//!
//! Each ant grows a tree Prim-style from a random vertex, choosing among the
//! eligible (tree vertex below the cap, outside vertex) edges by roulette on
//! `pheromone^alpha * (1/w)^beta`. After every iteration the pheromone
//! evaporates and each ant deposits `best_weight / tree_weight` on its edges.

use serde::{Deserialize, Serialize};

use super::{check_delta, kruskal_mdc};
use crate::error::{Error, Result};
use crate::graph::{ordered, SpanningTree, SplitMix64, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcoParams {
    pub alpha: f64,
    pub beta: f64,
    pub evaporation: f64,
    pub ants: usize,
    pub iterations: usize,
    pub pheromone_min: f64,
    pub pheromone_max: f64,
    pub initial_pheromone: f64,
}

impl Default for AcoParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 2.0,
            evaporation: 0.1,
            ants: 10,
            iterations: 100,
            pheromone_min: 0.01,
            pheromone_max: 10.0,
            initial_pheromone: 1.0,
        }
    }
}

impl AcoParams {
    /// Defaults with one ant per vertex.
    pub fn for_graph(graph: &WeightedGraph) -> Self {
        Self {
            ants: graph.vertex_count(),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.ants >= 1
            && (0.0..=1.0).contains(&self.evaporation)
            && self.pheromone_min > 0.0
            && self.pheromone_min <= self.pheromone_max
            && self.alpha.is_finite()
            && self.beta.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid ant-colony parameters {self:?}")))
        }
    }
}

fn construct(
    graph: &WeightedGraph,
    delta: usize,
    attractiveness: &[f64],
    rng: &mut SplitMix64,
) -> Option<Vec<(usize, usize)>> {
    let n = graph.vertex_count();
    let mut in_tree = vec![false; n];
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[rng.below(n)] = true;
    let mut candidates: Vec<(usize, usize, f64)> = Vec::new();
    while edges.len() < n - 1 {
        candidates.clear();
        let mut total = 0.0;
        for i in (0..n).filter(|&i| in_tree[i] && degree[i] < delta) {
            for j in (0..n).filter(|&j| !in_tree[j]) {
                if graph.weight(i, j).is_some() {
                    let a = attractiveness[i * n + j];
                    total += a;
                    candidates.push((i, j, a));
                }
            }
        }
        if candidates.is_empty() {
            return None;
        }
        let mut target = rng.next_f64() * total;
        let mut pick = candidates[candidates.len() - 1];
        for &c in &candidates {
            if target < c.2 {
                pick = c;
                break;
            }
            target -= c.2;
        }
        let (i, j, _) = pick;
        in_tree[j] = true;
        degree[i] += 1;
        degree[j] += 1;
        edges.push(ordered(i, j));
    }
    Some(edges)
}

/// Best feasible tree found over the iteration budget. The `kruskal_mdc`
/// result seeds the incumbent, so the output is never worse than it.
/// Deterministic for a fixed seed.
pub fn ant_colony_mdc(
    graph: &WeightedGraph,
    delta: usize,
    params: &AcoParams,
    seed: u64,
) -> Result<SpanningTree> {
    check_delta(delta)?;
    params.validate()?;
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    let n = graph.vertex_count();
    let mut best = kruskal_mdc(graph, delta).ok();
    let mut pheromone = vec![params.initial_pheromone; n * n];
    let mut attractiveness = vec![0.0; n * n];
    let mut rng = SplitMix64::new(seed);

    for _ in 0..params.iterations {
        for i in 0..n {
            for j in 0..n {
                if let Some(w) = graph.weight(i, j) {
                    attractiveness[i * n + j] =
                        pheromone[i * n + j].powf(params.alpha) * (1.0 / w).powf(params.beta);
                }
            }
        }
        let mut tours = Vec::with_capacity(params.ants);
        for _ in 0..params.ants {
            if let Some(edges) = construct(graph, delta, &attractiveness, &mut rng) {
                let tree = SpanningTree::from_valid_edges(graph, edges);
                if best
                    .as_ref()
                    .is_none_or(|b| tree.total_weight() < b.total_weight())
                {
                    best = Some(tree.clone());
                }
                tours.push(tree);
            }
        }
        for p in pheromone.iter_mut() {
            *p *= 1.0 - params.evaporation;
        }
        if let Some(reference) = best.as_ref().map(SpanningTree::total_weight) {
            for tree in &tours {
                let deposit = reference / tree.total_weight();
                for &(u, v) in tree.edges() {
                    pheromone[u * n + v] += deposit;
                    pheromone[v * n + u] += deposit;
                }
            }
        }
        for p in pheromone.iter_mut() {
            *p = p.clamp(params.pheromone_min, params.pheromone_max);
        }
    }
    best.ok_or(Error::ConstraintUnsatisfiedByGreedy { delta })
}

//! Quantum Kruskal: rank edges by walk transition probability, then build the
//! tree greedily with a union-find cycle check, optionally under a maximum
//! vertex degree.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::baselines::BaselineLabel;
use crate::error::{Error, Result};
use crate::evolution::{ProbabilityMatrix, QuantumWalk};
use crate::graph::{kruskal_scan, SpanningTree, WeightedGraph};
use crate::hamiltonian::build_hamiltonian;

/// Size-independent evolution time below which ranking reliably yields the MST.
pub const DEFAULT_TAU: f64 = 0.1;
/// Safety factor applied to [`tau_heuristic`] in heuristic mode.
pub const DEFAULT_SAFETY_FACTOR: f64 = 0.5;
/// Probabilities are rounded to this many significant digits before ranking.
pub const RANK_SIGNIFICANT_DIGITS: usize = 12;

/// Fitted envelope of the largest reliable evolution time: 4/(π√V) + 0.1.
pub fn tau_heuristic(vertex_count: usize) -> f64 {
    4.0 / (std::f64::consts::PI * (vertex_count as f64).sqrt()) + 0.1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TauPolicy {
    Fixed { value: f64 },
    Heuristic { safety_factor: f64 },
}

impl Default for TauPolicy {
    fn default() -> Self {
        TauPolicy::Fixed { value: DEFAULT_TAU }
    }
}

impl TauPolicy {
    pub fn fixed(value: f64) -> Self {
        TauPolicy::Fixed { value }
    }

    pub fn heuristic(safety_factor: f64) -> Self {
        TauPolicy::Heuristic { safety_factor }
    }

    pub fn resolve(&self, vertex_count: usize) -> Result<f64> {
        let tau = match *self {
            TauPolicy::Fixed { value } => value,
            TauPolicy::Heuristic { safety_factor } => {
                if !(safety_factor > 0.0 && safety_factor <= 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "safety factor must lie in (0, 1], got {safety_factor}"
                    )));
                }
                safety_factor * tau_heuristic(vertex_count)
            }
        };
        if tau.is_finite() && tau > 0.0 {
            Ok(tau)
        } else {
            Err(Error::InvalidArgument(format!(
                "evolution time must be positive, got {tau}"
            )))
        }
    }
}

/// Every algorithm the benchmark harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum AlgorithmLabel {
    QuantumKruskal,
    QuantumKruskalMdc,
    Baseline(BaselineLabel),
}

impl AlgorithmLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmLabel::QuantumKruskal => "quantum_kruskal",
            AlgorithmLabel::QuantumKruskalMdc => "quantum_kruskal_mdc",
            AlgorithmLabel::Baseline(b) => b.as_str(),
        }
    }
}

impl fmt::Display for AlgorithmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum_kruskal" | "qk" => Ok(AlgorithmLabel::QuantumKruskal),
            "quantum_kruskal_mdc" | "qk_mdc" => Ok(AlgorithmLabel::QuantumKruskalMdc),
            other => other.parse().map(AlgorithmLabel::Baseline),
        }
    }
}

impl From<AlgorithmLabel> for String {
    fn from(l: AlgorithmLabel) -> Self {
        l.as_str().to_string()
    }
}

impl TryFrom<String> for AlgorithmLabel {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A graph edge with its transition probability at the solve time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub tree: SpanningTree,
    pub tau_used: f64,
    /// Accepted edges in the order they were added.
    pub ranked_edges: Vec<RankedEdge>,
    pub algorithm: AlgorithmLabel,
    pub elapsed: Duration,
}

/// Rounds to `RANK_SIGNIFICANT_DIGITS` significant digits so that
/// probabilities equal up to eigensolver noise compare equal.
pub fn rank_key(p: f64) -> f64 {
    if p == 0.0 || !p.is_finite() {
        return p;
    }
    format!("{:.*e}", RANK_SIGNIFICANT_DIGITS - 1, p)
        .parse()
        .expect("formatted float parses")
}

/// Graph edges ordered by (probability desc, weight asc, u asc, v asc),
/// with probabilities compared after [`rank_key`] rounding. Only actual graph
/// edges are eligible.
pub fn rank_edges(graph: &WeightedGraph, p: &ProbabilityMatrix) -> Vec<RankedEdge> {
    let mut keyed: Vec<(f64, RankedEdge)> = graph
        .edges()
        .iter()
        .map(|e| {
            let probability = p.get(e.u, e.v);
            (
                rank_key(probability),
                RankedEdge {
                    u: e.u,
                    v: e.v,
                    weight: e.w,
                    probability,
                },
            )
        })
        .collect();
    keyed.sort_by(|(ka, a), (kb, b)| {
        kb.total_cmp(ka)
            .then(a.weight.total_cmp(&b.weight))
            .then(a.u.cmp(&b.u))
            .then(a.v.cmp(&b.v))
    });
    keyed.into_iter().map(|(_, e)| e).collect()
}

/// Greedy selection over a precomputed probability matrix.
pub fn select_tree(
    graph: &WeightedGraph,
    p: &ProbabilityMatrix,
    max_degree: Option<usize>,
) -> Result<(SpanningTree, Vec<RankedEdge>)> {
    let ranked = rank_edges(graph, p);
    let tree = kruskal_scan(graph, ranked.iter().map(|e| (e.u, e.v)), max_degree)?;
    let accepted = tree
        .edges()
        .iter()
        .map(|&(u, v)| {
            *ranked
                .iter()
                .find(|e| e.u == u && e.v == v)
                .expect("accepted edges come from the ranking")
        })
        .collect();
    Ok((tree, accepted))
}

fn check_delta(delta: usize) -> Result<()> {
    if delta < 2 {
        return Err(Error::InfeasibleConstraint(format!(
            "maximum degree must be at least 2, got {delta}"
        )));
    }
    Ok(())
}

fn solve(graph: &WeightedGraph, tau: f64, max_degree: Option<usize>) -> Result<SolveResult> {
    let start = Instant::now();
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "evolution time must be positive, got {tau}"
        )));
    }
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    let walk = QuantumWalk::new(&build_hamiltonian(graph)?)?;
    let p = walk.probabilities(tau)?;
    let (tree, ranked_edges) = select_tree(graph, &p, max_degree)?;
    if let Some(delta) = max_degree {
        assert!(tree.max_degree() <= delta, "degree cap violated");
    }
    Ok(SolveResult {
        tree,
        tau_used: tau,
        ranked_edges,
        algorithm: if max_degree.is_some() {
            AlgorithmLabel::QuantumKruskalMdc
        } else {
            AlgorithmLabel::QuantumKruskal
        },
        elapsed: start.elapsed(),
    })
}

/// Unconstrained Quantum Kruskal at evolution time `tau`.
pub fn quantum_kruskal(graph: &WeightedGraph, tau: f64) -> Result<SolveResult> {
    solve(graph, tau, None)
}

/// Quantum Kruskal that skips edges whose endpoints already have degree `delta`.
pub fn quantum_kruskal_mdc(graph: &WeightedGraph, tau: f64, delta: usize) -> Result<SolveResult> {
    check_delta(delta)?;
    solve(graph, tau, Some(delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_spanning_trees, random_complete_graph};
    use crate::reference::hub_graph;
    use approx::assert_abs_diff_eq;

    /// Minimum weight over all enumerated trees with max degree ≤ `delta`.
    fn brute_force_optimum(graph: &WeightedGraph, delta: usize) -> f64 {
        enumerate_spanning_trees(graph)
            .unwrap()
            .filter(|(_, t)| t.max_degree() <= delta)
            .map(|(_, t)| t.total_weight())
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn heuristic_values() {
        assert_abs_diff_eq!(tau_heuristic(4), 0.736_619_772_367_581_4, epsilon = 1e-12);
        assert_abs_diff_eq!(tau_heuristic(100), 0.227_323_954_473_516_3, epsilon = 1e-12);
        assert!((tau_heuristic(usize::MAX) - 0.1).abs() < 1e-9);
    }

    #[test]
    fn tau_policy_resolution() {
        assert_eq!(TauPolicy::default().resolve(50).unwrap(), 0.1);
        assert_abs_diff_eq!(
            TauPolicy::heuristic(0.5).resolve(100).unwrap(),
            0.5 * tau_heuristic(100)
        );
        assert!(TauPolicy::heuristic(0.0).resolve(10).is_err());
        assert!(TauPolicy::heuristic(1.5).resolve(10).is_err());
        assert!(TauPolicy::fixed(-1.0).resolve(10).is_err());
    }

    #[test]
    fn hub_graph_unconstrained() {
        let g = hub_graph();
        assert_eq!(brute_force_optimum(&g, 3), 6.0);
        let r = quantum_kruskal(&g, 0.1).unwrap();
        assert_eq!(r.tree.sorted_edges(), vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(r.tree.total_weight(), 6.0);
        assert_eq!(r.algorithm, AlgorithmLabel::QuantumKruskal);
        let probs: Vec<f64> = r.ranked_edges.iter().map(|e| e.probability).collect();
        assert!(probs.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn hub_graph_degree_two() {
        let g = hub_graph();
        assert_eq!(brute_force_optimum(&g, 2), 14.0);
        let r = quantum_kruskal_mdc(&g, 0.1, 2).unwrap();
        assert_eq!(r.tree.sorted_edges(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(r.tree.total_weight(), 14.0);
        assert!(r.tree.max_degree() <= 2);
    }

    #[test]
    fn loose_cap_equals_unconstrained() {
        for seed in 0..10 {
            let g = random_complete_graph(7, 1, 20, seed).unwrap();
            let a = quantum_kruskal(&g, 0.1).unwrap();
            let b = quantum_kruskal_mdc(&g, 0.1, 6).unwrap();
            assert_eq!(a.tree, b.tree);
            assert_eq!(a.ranked_edges, b.ranked_edges);
        }
    }

    #[test]
    fn two_vertices() {
        let g = WeightedGraph::new(2, [(0, 1, 3.0)]).unwrap();
        let r = quantum_kruskal(&g, 0.1).unwrap();
        assert_eq!(r.tree.edges(), &[(0, 1)]);
        assert_eq!(r.tree.total_weight(), 3.0);
    }

    #[test]
    fn error_paths() {
        let g = hub_graph();
        assert!(matches!(
            quantum_kruskal_mdc(&g, 0.1, 1),
            Err(Error::InfeasibleConstraint(_))
        ));
        assert!(quantum_kruskal(&g, 0.0).is_err());
        let split = WeightedGraph::new(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(quantum_kruskal(&split, 0.1), Err(Error::NoSpanningTree));
        // A star cannot be rebuilt under degree 2.
        let star = WeightedGraph::new(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        assert_eq!(
            quantum_kruskal_mdc(&star, 0.1, 2),
            Err(Error::ConstraintUnsatisfiedByGreedy { delta: 2 })
        );
    }

    #[test]
    fn non_edges_are_never_selected() {
        let path = WeightedGraph::new(4, [(0, 1, 5.0), (1, 2, 5.0), (2, 3, 5.0)]).unwrap();
        let r = quantum_kruskal(&path, 0.5).unwrap();
        assert_eq!(r.tree.sorted_edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn deterministic_results() {
        let g = random_complete_graph(15, 1, 5, 77).unwrap();
        let a = quantum_kruskal_mdc(&g, 0.1, 3).unwrap();
        let b = quantum_kruskal_mdc(&g, 0.1, 3).unwrap();
        assert_eq!(a.tree, b.tree);
        assert_eq!(a.ranked_edges, b.ranked_edges);
    }

    #[test]
    fn rank_key_rounds_to_twelve_digits() {
        assert_eq!(rank_key(0.123_456_789_012_34), 0.123_456_789_012);
        assert_eq!(rank_key(0.0), 0.0);
        assert_eq!(rank_key(1.0 + 1e-15), 1.0);
    }

    #[test]
    fn labels_round_trip() {
        for s in ["quantum_kruskal", "quantum_kruskal_mdc", "kruskal", "exact_dcmst"] {
            assert_eq!(s.parse::<AlgorithmLabel>().unwrap().to_string(), s);
        }
        assert!("dijkstra".parse::<AlgorithmLabel>().is_err());
    }
}

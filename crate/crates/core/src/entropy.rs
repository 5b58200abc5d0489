//! Shannon entropy of spanning trees under the walk's transition
//! probabilities, the maximal-entropy random walk rate, and the
//! weight-versus-entropy scatter over all trees of a small graph.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{transition_probabilities, ProbabilityMatrix};
use crate::graph::{enumerate_spanning_trees, SpanningTree, WeightedGraph};
use crate::hamiltonian::build_hamiltonian;
use crate::linalg::symmetric_eigen;

/// Stay probabilities at or above `1 - DEGENERACY_TOLERANCE` cannot be
/// normalised away.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// `-x log2 x` with `0 log 0 = 0`.
fn surprisal_term(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Transition probabilities conditioned on leaving the start vertex:
/// `p̃[i][j] = p[i][j] / (1 - p[j][j])` for `i ≠ j`, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedTransitions {
    p_tilde: Array2<f64>,
}

impl NormalizedTransitions {
    pub fn matrix(&self) -> &Array2<f64> {
        &self.p_tilde
    }

    pub fn get(&self, to: usize, from: usize) -> f64 {
        self.p_tilde[[to, from]]
    }

    /// max |Σ_i p̃[i][j] − 1| over columns.
    pub fn column_sum_error(&self) -> f64 {
        self.p_tilde
            .columns()
            .into_iter()
            .map(|c| (c.sum() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn normalize_transitions(p: &ProbabilityMatrix) -> Result<NormalizedTransitions> {
    let n = p.dim();
    let mut p_tilde = Array2::zeros((n, n));
    for j in 0..n {
        let stay = p.get(j, j);
        if stay >= 1.0 - DEGENERACY_TOLERANCE {
            return Err(Error::DegenerateNormalization { vertex: j, p_stay: stay });
        }
        // Equals 1 - p[j][j] for a stochastic column, without the
        // cancellation that loses digits at small tau.
        let leave: f64 = (0..n).filter(|&i| i != j).map(|i| p.get(i, j)).sum();
        if leave <= 0.0 {
            return Err(Error::DegenerateNormalization { vertex: j, p_stay: stay });
        }
        for i in (0..n).filter(|&i| i != j) {
            p_tilde[[i, j]] = (p.get(i, j) / leave).min(1.0);
        }
    }
    Ok(NormalizedTransitions { p_tilde })
}

fn directed_tree_sum(tree: &SpanningTree, get: impl Fn(usize, usize) -> f64) -> f64 {
    tree.edges()
        .iter()
        .map(|&(u, v)| surprisal_term(get(u, v)) + surprisal_term(get(v, u)))
        .sum()
}

/// Entropy in bits over both orientations of every tree edge, using the
/// normalised transitions.
pub fn tree_entropy(nt: &NormalizedTransitions, tree: &SpanningTree) -> f64 {
    directed_tree_sum(tree, |to, from| nt.get(to, from))
}

/// As [`tree_entropy`] but on the raw transition probabilities.
pub fn tree_entropy_raw(p: &ProbabilityMatrix, tree: &SpanningTree) -> f64 {
    directed_tree_sum(tree, |to, from| p.get(to, from))
}

/// Stationary distribution of the maximal-entropy random walk on the
/// coupling matrix `A′_ij = 1/w_ij`: the squared unit Perron vector.
pub fn merw_stationary(graph: &WeightedGraph) -> Result<Vec<f64>> {
    let n = graph.vertex_count();
    let mut a = Array2::zeros((n, n));
    for e in graph.edges() {
        a[[e.u, e.v]] = 1.0 / e.w;
        a[[e.v, e.u]] = 1.0 / e.w;
    }
    let (_, vectors) = symmetric_eigen(&a)?;
    Ok(vectors.column(n - 1).iter().map(|x| x * x).collect())
}

/// `-Σ_j π_j Σ_i p[i][j] log2 p[i][j]` with π the MERW stationary distribution.
pub fn merw_entropy_rate(graph: &WeightedGraph, p: &ProbabilityMatrix) -> Result<f64> {
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    let pi = merw_stationary(graph)?;
    let n = graph.vertex_count();
    Ok((0..n)
        .map(|j| pi[j] * (0..n).map(|i| surprisal_term(p.get(i, j))).sum::<f64>())
        .sum())
}

/// Which probabilities the scatter scores trees with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyBasis {
    /// Raw transition probabilities `p[i][j]`.
    #[default]
    Raw,
    /// Probabilities conditioned on leaving, `p̃[i][j]`.
    Normalized,
}

impl fmt::Display for EntropyBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyBasis::Raw => "raw",
            EntropyBasis::Normalized => "normalized",
        })
    }
}

impl FromStr for EntropyBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(EntropyBasis::Raw),
            "normalized" => Ok(EntropyBasis::Normalized),
            other => Err(Error::InvalidArgument(format!("unknown entropy basis '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeEntropyRecord {
    pub tree_id: u64,
    pub edges: Vec<(usize, usize)>,
    pub total_weight: f64,
    pub entropy_bits: f64,
    /// Max degree within the cap; always true without a cap.
    pub feasible: bool,
}

/// One record per spanning tree, in tree-id order.
pub fn entropy_scatter(
    graph: &WeightedGraph,
    tau: f64,
    delta: Option<usize>,
    basis: EntropyBasis,
) -> Result<Vec<TreeEntropyRecord>> {
    let trees = enumerate_spanning_trees(graph)?;
    let p = transition_probabilities(&build_hamiltonian(graph)?, tau)?;
    let nt = match basis {
        EntropyBasis::Raw => None,
        EntropyBasis::Normalized => Some(normalize_transitions(&p)?),
    };
    Ok(trees
        .map(|(tree_id, tree)| TreeEntropyRecord {
            tree_id,
            entropy_bits: match &nt {
                Some(nt) => tree_entropy(nt, &tree),
                None => tree_entropy_raw(&p, &tree),
            },
            total_weight: tree.total_weight(),
            feasible: delta.is_none_or(|d| tree.max_degree() <= d),
            edges: tree.sorted_edges(),
        })
        .collect())
}

/// Highest-entropy record, optionally among feasible ones only. Ties go to
/// the lowest tree id.
pub fn max_entropy_record(
    records: &[TreeEntropyRecord],
    feasible_only: bool,
) -> Option<&TreeEntropyRecord> {
    records
        .iter()
        .filter(|r| !feasible_only || r.feasible)
        .fold(None, |best: Option<&TreeEntropyRecord>, r| match best {
            Some(b) if b.entropy_bits >= r.entropy_bits => Some(b),
            _ => Some(r),
        })
}

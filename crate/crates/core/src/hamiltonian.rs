//! Inverse-weight graph Laplacian used as the walk Hamiltonian.
//!
//! Off-diagonal couplings are `-1/w_ij`, so cheap edges couple strongly; the
//! diagonal holds the row sums `Σ_j 1/w_ij`. Units are natural (ħ = c = 1).

use std::fmt::Write as _;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HamiltonianOptions {
    /// Replace the diagonal with zeros (H = −A′). Changes the probabilities
    /// but not their small-τ ordering.
    pub zero_diagonal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: Array2<f64>,
    source_graph_id: String,
}

impl Hamiltonian {
    /// Wraps an arbitrary real symmetric matrix.
    pub fn from_matrix(matrix: Array2<f64>, source_graph_id: impl Into<String>) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::InvalidArgument("Hamiltonian must be square".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[[i, j]] != matrix[[j, i]] {
                    return Err(Error::InvalidArgument(format!(
                        "Hamiltonian is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self {
            matrix,
            source_graph_id: source_graph_id.into(),
        })
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn source_graph_id(&self) -> &str {
        &self.source_graph_id
    }

    /// D′ as a vector.
    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diag().to_vec()
    }

    /// A′ = −(off-diagonal part of H), zero diagonal.
    pub fn coupling(&self) -> Array2<f64> {
        let mut a = -&self.matrix;
        a.diag_mut().fill(0.0);
        a
    }

    /// Row-major CSV with full round-trip precision.
    pub fn to_csv(&self) -> String {
        matrix_to_csv(&self.matrix)
    }
}

pub(crate) fn matrix_to_csv(m: &Array2<f64>) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn build_hamiltonian(graph: &WeightedGraph) -> Result<Hamiltonian> {
    build_hamiltonian_with(graph, HamiltonianOptions::default())
}

pub fn build_hamiltonian_with(
    graph: &WeightedGraph,
    options: HamiltonianOptions,
) -> Result<Hamiltonian> {
    let n = graph.vertex_count();
    let mut h = Array2::zeros((n, n));
    for e in graph.edges() {
        if !(e.w.is_finite() && e.w > 0.0) {
            return Err(Error::InvalidWeight {
                u: e.u,
                v: e.v,
                weight: e.w,
            });
        }
        let coupling = 1.0 / e.w;
        h[[e.u, e.v]] = -coupling;
        h[[e.v, e.u]] = -coupling;
    }
    if !options.zero_diagonal {
        for i in 0..n {
            // Sum in column order so every row uses the same summation order.
            let d: f64 = (0..n).filter(|&j| j != i).map(|j| -h[[i, j]]).sum();
            h[[i, i]] = d;
        }
    }
    Ok(Hamiltonian {
        matrix: h,
        source_graph_id: graph.fingerprint(),
    })
}

/// Largest entry magnitude of the commutator [D′, −A′]:
/// `max_{p≠q} |(D′_pp − D′_qq) · A′_pq|`.
pub fn commutator_diagnostic(h: &Hamiltonian) -> f64 {
    let m = h.matrix();
    let n = h.dim();
    let mut worst: f64 = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                let term = (m[[p, p]] - m[[q, q]]) * m[[p, q]];
                worst = worst.max(term.abs());
            }
        }
    }
    worst
}

//! Continuous-time quantum-walk propagators and transition probabilities.
//!
//! The exact propagator is `U(τ) = Q · diag(e^{−iλτ}) · Qᵀ` from the
//! spectral decomposition of H. The split propagator is the symmetric
//! second-order product
//!
//! ```text
//! U_n(τ) = ( e^{−i(τ/2n)D′} · e^{+i(τ/n)A′} · e^{−i(τ/2n)D′} )^n
//! ```
//!
//! with D′ the diagonal of H and A′ the (positive) coupling matrix, so that
//! D′ − A′ = H.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::hamiltonian::{matrix_to_csv, Hamiltonian};
use crate::linalg::{max_abs_diff, spectral_product, symmetric_eigen, ComplexMatrix};

/// Probabilities may stray this far outside [0, 1] from rounding before the
/// result is treated as a numerical failure.
pub const CLAMP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub eigenvectors: Array2<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Q · diag(λ) · Qᵀ.
    pub fn reconstruct(&self) -> Array2<f64> {
        spectral_product(&self.eigenvectors, &Array1::from(self.eigenvalues.clone()))
    }

    /// max |QᵀQ − I|.
    pub fn orthogonality_error(&self) -> f64 {
        let q = &self.eigenvectors;
        max_abs_diff(&q.t().dot(q), &Array2::eye(self.dim()))
    }
}

pub fn eigendecompose(h: &Hamiltonian) -> Result<Spectrum> {
    spectrum_of(h.matrix())
}

pub(crate) fn spectrum_of(matrix: &Array2<f64>) -> Result<Spectrum> {
    let (eigenvalues, eigenvectors) = symmetric_eigen(matrix)?;
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionOperator {
    operator: ComplexMatrix,
    tau: f64,
}

impl EvolutionOperator {
    pub fn real_part(&self) -> &Array2<f64> {
        &self.operator.re
    }

    pub fn imag_part(&self) -> &Array2<f64> {
        &self.operator.im
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    /// max |U†U − I|.
    pub fn unitarity_error(&self) -> f64 {
        self.operator.unitarity_error()
    }

    /// max |U_ij − U_ji| over real and imaginary parts.
    pub fn symmetry_error(&self) -> f64 {
        max_abs_diff(&self.operator.re, &self.operator.re.t().to_owned())
            .max(max_abs_diff(&self.operator.im, &self.operator.im.t().to_owned()))
    }

    /// |U_ij|² with the clamping policy of [`ProbabilityMatrix`].
    pub fn probabilities(&self) -> Result<ProbabilityMatrix> {
        ProbabilityMatrix::from_raw(self.operator.abs_squared(), self.tau)
    }
}

/// Exact propagator e^{−iHτ} from a precomputed spectrum.
pub fn evolve(spectrum: &Spectrum, tau: f64) -> EvolutionOperator {
    let n = spectrum.dim();
    if tau == 0.0 {
        return EvolutionOperator {
            operator: ComplexMatrix::identity(n),
            tau,
        };
    }
    let cos = Array1::from_iter(spectrum.eigenvalues.iter().map(|l| (l * tau).cos()));
    let neg_sin = Array1::from_iter(spectrum.eigenvalues.iter().map(|l| -(l * tau).sin()));
    EvolutionOperator {
        operator: ComplexMatrix {
            re: spectral_product(&spectrum.eigenvectors, &cos),
            im: spectral_product(&spectrum.eigenvectors, &neg_sin),
        },
        tau,
    }
}

/// Transition probabilities `p[j][i] = |⟨j|U(τ)|i⟩|²`.
///
/// Symmetric and doubly stochastic because U is unitary and symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    p: Array2<f64>,
    tau: f64,
}

impl ProbabilityMatrix {
    /// Clamps `raw` into [0, 1]; excursions beyond [`CLAMP_TOLERANCE`] are
    /// reported as numerical failure.
    pub fn from_raw(mut raw: Array2<f64>, tau: f64) -> Result<Self> {
        for ((i, j), x) in raw.indexed_iter_mut() {
            if !x.is_finite() || *x < -CLAMP_TOLERANCE || *x > 1.0 + CLAMP_TOLERANCE {
                return Err(Error::NumericalFailure(format!(
                    "probability p[{i}][{j}] = {x} outside [0, 1] at tau = {tau}"
                )));
            }
            *x = x.clamp(0.0, 1.0);
        }
        Ok(Self { p: raw, tau })
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.p
    }

    /// Probability of arriving at `to` when starting from `from`.
    pub fn get(&self, to: usize, from: usize) -> f64 {
        self.p[[to, from]]
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    /// max |Σ_j p[i][j] − 1| over rows.
    pub fn row_sum_error(&self) -> f64 {
        self.p
            .rows()
            .into_iter()
            .map(|r| (r.sum() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// max |p[i][j] − p[j][i]|.
    pub fn symmetry_error(&self) -> f64 {
        max_abs_diff(&self.p, &self.p.t().to_owned())
    }

    /// Row-major CSV, 17 significant digits.
    pub fn to_csv(&self) -> String {
        matrix_to_csv(&self.p)
    }
}

/// Caches the spectrum of H so that probabilities can be evaluated at many
/// times for the cost of one diagonalisation.
#[derive(Debug, Clone)]
pub struct QuantumWalk {
    spectrum: Spectrum,
}

impl QuantumWalk {
    pub fn new(h: &Hamiltonian) -> Result<Self> {
        Ok(Self {
            spectrum: eigendecompose(h)?,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn operator(&self, tau: f64) -> EvolutionOperator {
        evolve(&self.spectrum, tau)
    }

    pub fn probabilities(&self, tau: f64) -> Result<ProbabilityMatrix> {
        check_tau(tau)?;
        self.operator(tau).probabilities()
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "evolution time must be finite and non-negative, got {tau}"
        )))
    }
}

pub fn transition_probabilities(h: &Hamiltonian, tau: f64) -> Result<ProbabilityMatrix> {
    check_tau(tau)?;
    QuantumWalk::new(h)?.probabilities(tau)
}

/// Second-order split propagator with `steps` repetitions.
pub fn trotter_evolve(h: &Hamiltonian, tau: f64, steps: usize) -> Result<EvolutionOperator> {
    check_tau(tau)?;
    if steps == 0 {
        return Err(Error::InvalidArgument("Trotter steps must be at least 1".into()));
    }
    let n = h.dim();
    if tau == 0.0 {
        return Ok(EvolutionOperator {
            operator: ComplexMatrix::identity(n),
            tau,
        });
    }
    let dt = tau / steps as f64;

    let half_diag: Vec<f64> = h.diagonal().iter().map(|d| -0.5 * dt * d).collect();
    let half_diag = ComplexMatrix::diagonal_phase(&half_diag);

    let coupling = spectrum_of(&h.coupling())?;
    let cos = Array1::from_iter(coupling.eigenvalues.iter().map(|m| (m * dt).cos()));
    let sin = Array1::from_iter(coupling.eigenvalues.iter().map(|m| (m * dt).sin()));
    let coupling_step = ComplexMatrix {
        re: spectral_product(&coupling.eigenvectors, &cos),
        im: spectral_product(&coupling.eigenvectors, &sin),
    };

    let step = half_diag.matmul(&coupling_step).matmul(&half_diag);
    Ok(EvolutionOperator {
        operator: step.pow(steps),
        tau,
    })
}

/// max_{i,j} |p_exact[i][j] − p_split[i][j]|.
pub fn trotter_deviation(h: &Hamiltonian, tau: f64, steps: usize) -> Result<f64> {
    let exact = transition_probabilities(h, tau)?;
    let split = trotter_evolve(h, tau, steps)?.probabilities()?;
    Ok(max_abs_diff(exact.matrix(), split.matrix()))
}

/// Leading short-time term: off-diagonal `τ²/w_ij²` (0 for non-edges),
/// diagonal `max(0, 1 − row sum)`. Only meaningful for ordering.
pub fn leading_order_probability(graph: &WeightedGraph, tau: f64) -> Array2<f64> {
    let n = graph.vertex_count();
    let mut p = Array2::zeros((n, n));
    for e in graph.edges() {
        let x = tau * tau / (e.w * e.w);
        p[[e.u, e.v]] = x;
        p[[e.v, e.u]] = x;
    }
    for i in 0..n {
        let off: f64 = p.row(i).sum();
        p[[i, i]] = (1.0 - off).max(0.0);
    }
    p
}

//! Dense real-symmetric eigensolver and complex matrices carried as
//! (real, imaginary) pairs.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm, relative to ‖A‖_F.
pub const JACOBI_RELATIVE_TOLERANCE: f64 = 1e-14;
/// Maximum number of cyclic sweeps before reporting failure.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as columns. Each eigenvector is signed so that its first
/// entry of (numerically) largest magnitude is positive.
pub fn symmetric_eigen(matrix: &Array2<f64>) -> Result<(Vec<f64>, Array2<f64>)> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::InvalidArgument(format!(
            "eigensolver needs a square matrix, got {}x{}",
            n,
            matrix.ncols()
        )));
    }
    if matrix.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericalFailure("matrix has non-finite entries".into()));
    }

    // Row-major working copies; the solver touches rows and columns p, q
    // in the inner loop so plain slices are much faster than 2-D indexing.
    let mut a: Vec<f64> = matrix.iter().copied().collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = JACOBI_RELATIVE_TOLERANCE * frobenius;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = off_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NumericalFailure(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps (off-norm {:.3e}, threshold {:.3e})",
                off_norm(&a),
                threshold
            )));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    a[k * n + p] = new_p;
                    a[p * n + k] = new_p;
                    a[k * n + q] = new_q;
                    a[q * n + k] = new_q;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        converged = off_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Array2::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        let max_abs = (0..n).map(|k| v[k * n + src].abs()).fold(0.0, f64::max);
        let pivot = (0..n)
            .find(|&k| v[k * n + src].abs() >= max_abs - 1e-12)
            .unwrap_or(0);
        let sign = if v[pivot * n + src] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            vectors[[k, col]] = sign * v[k * n + src];
        }
    }
    Ok((eigenvalues, vectors))
}

/// Q · diag(d) · Qᵀ.
pub fn spectral_product(q: &Array2<f64>, diag: &Array1<f64>) -> Array2<f64> {
    let scaled = q * diag;
    scaled.dot(&q.t())
}

/// Complex matrix as separate real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub re: Array2<f64>,
    pub im: Array2<f64>,
}

impl ComplexMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            re: Array2::eye(n),
            im: Array2::zeros((n, n)),
        }
    }

    /// Diagonal matrix with entries exp(i·phase_k).
    pub fn diagonal_phase(phases: &[f64]) -> Self {
        let n = phases.len();
        let mut re = Array2::zeros((n, n));
        let mut im = Array2::zeros((n, n));
        for (k, &ph) in phases.iter().enumerate() {
            re[[k, k]] = ph.cos();
            im[[k, k]] = ph.sin();
        }
        Self { re, im }
    }

    pub fn dim(&self) -> usize {
        self.re.nrows()
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let re = self.re.dot(&other.re) - self.im.dot(&other.im);
        let im = self.re.dot(&other.im) + self.im.dot(&other.re);
        ComplexMatrix { re, im }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut exp: usize) -> ComplexMatrix {
        let mut result = ComplexMatrix::identity(self.dim());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.matmul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    /// Entrywise |z|².
    pub fn abs_squared(&self) -> Array2<f64> {
        &self.re * &self.re + &self.im * &self.im
    }

    /// max |(U†U − I)_ij|.
    pub fn unitarity_error(&self) -> f64 {
        // U†U = (Reᵀ − i Imᵀ)(Re + i Im)
        let re = self.re.t().dot(&self.re) + self.im.t().dot(&self.im);
        let im = self.re.t().dot(&self.im) - self.im.t().dot(&self.re);
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((re[[i, j]] - target).abs()).max(im[[i, j]].abs());
            }
        }
        worst
    }
}

/// max |a_ij − b_ij|.
pub fn max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

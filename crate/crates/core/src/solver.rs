//! Residual-controlled SPD solves: Jacobi-preconditioned conjugate gradients,
//! with a dense Cholesky path for small systems.

use nalgebra::{Cholesky, DVector, Dyn};

use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Solver knobs shared by every sparse solve in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative residual target `‖Ax − b‖ ≤ tol·‖b‖`.
    pub tol: f64,
    /// Iteration cap; `None` means `10·m`.
    pub max_iter: Option<usize>,
    /// Systems smaller than this are factored densely.
    pub dense_below: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: None,
            dense_below: 500,
        }
    }
}

impl SolverConfig {
    fn cap(&self, m: usize) -> usize {
        self.max_iter.unwrap_or(10 * m.max(1))
    }

    pub fn iterative_only(mut self) -> Self {
        self.dense_below = 0;
        self
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn remove_mean(x: &mut [f64]) {
    if x.is_empty() {
        return;
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

/// Preconditioned CG on `A x = b` for a symmetric operator that is positive
/// definite on the relevant subspace. With `singular` set, residuals are kept
/// orthogonal to the all-ones vector and the result is returned mean-zero.
fn pcg(
    a: &CsrMatrix,
    inv_diag: &[f64],
    b: &[f64],
    tol: f64,
    cap: usize,
    singular: bool,
) -> Result<Vec<f64>> {
    let m = b.len();
    let b_norm = norm(b);
    let mut x = vec![0.0; m];
    if b_norm == 0.0 {
        return Ok(x);
    }
    let target = tol * b_norm;
    let mut r = b.to_vec();
    let mut ap = vec![0.0; m];
    let mut iterations = 0;
    // restarts guard against drift between the recurrence and true residual
    for _restart in 0..3 {
        if singular {
            remove_mean(&mut r);
        }
        let mut z: Vec<f64> = r.iter().zip(inv_diag).map(|(ri, di)| ri * di).collect();
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        while iterations < cap && norm(&r) > target {
            a.mul_vec(&p, &mut ap);
            let pap = dot(&p, &ap);
            if pap <= 0.0 || !pap.is_finite() {
                break;
            }
            let alpha = rz / pap;
            for i in 0..m {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            if singular {
                remove_mean(&mut r);
            }
            for i in 0..m {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..m {
                p[i] = z[i] + beta * p[i];
            }
            iterations += 1;
        }
        // true residual
        a.mul_vec(&x, &mut ap);
        for i in 0..m {
            r[i] = b[i] - ap[i];
        }
        if singular {
            remove_mean(&mut r);
        }
        if norm(&r) <= target {
            if singular {
                remove_mean(&mut x);
            }
            return Ok(x);
        }
        if iterations >= cap {
            break;
        }
    }
    Err(Error::Convergence {
        iterations,
        residual: norm(&r) / b_norm,
    })
}

fn inverse_diagonal(a: &CsrMatrix) -> Vec<f64> {
    a.diagonal()
        .into_iter()
        .map(|d| if d > 0.0 { 1.0 / d } else { 1.0 })
        .collect()
}

/// A factored-or-iterative solver for one SPD matrix.
#[derive(Debug, Clone)]
pub struct SpdSolver {
    backend: Backend,
    config: SolverConfig,
}

#[derive(Debug, Clone)]
enum Backend {
    Dense(Cholesky<f64, Dyn>),
    Iterative { a: CsrMatrix, inv_diag: Vec<f64> },
    Empty,
}

impl SpdSolver {
    pub fn new(a: &CsrMatrix, config: SolverConfig) -> Result<Self> {
        let m = a.rows();
        let backend = if m == 0 {
            Backend::Empty
        } else if m < config.dense_below {
            let chol = Cholesky::new(a.to_dense())
                .ok_or_else(|| Error::Input("matrix is not positive definite".into()))?;
            Backend::Dense(chol)
        } else {
            Backend::Iterative {
                a: a.clone(),
                inv_diag: inverse_diagonal(a),
            }
        };
        Ok(Self { backend, config })
    }

    pub fn dim(&self) -> usize {
        match &self.backend {
            Backend::Dense(c) => c.l_dirty().nrows(),
            Backend::Iterative { a, .. } => a.rows(),
            Backend::Empty => 0,
        }
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        match &self.backend {
            Backend::Empty => Ok(Vec::new()),
            Backend::Dense(chol) => Ok(chol.solve(&DVector::from_column_slice(b)).as_slice().to_vec()),
            Backend::Iterative { a, inv_diag } => {
                pcg(a, inv_diag, b, self.config.tol, self.config.cap(b.len()), false)
            }
        }
    }
}

/// Solves `L x = b` for a connected graph Laplacian `L` and mean-zero `b`,
/// returning the mean-zero solution.
#[derive(Debug, Clone)]
pub struct LaplacianSolver {
    backend: Backend,
    config: SolverConfig,
}

impl LaplacianSolver {
    pub fn new(l: &CsrMatrix, config: SolverConfig) -> Result<Self> {
        let m = l.rows();
        let backend = if m < config.dense_below {
            // L + J/m is nonsingular and agrees with L on mean-zero vectors
            let shifted = l.to_dense().add_scalar(1.0 / m as f64);
            let chol = Cholesky::new(shifted)
                .ok_or_else(|| Error::Validation("Laplacian of a disconnected graph".into()))?;
            Backend::Dense(chol)
        } else {
            Backend::Iterative {
                a: l.clone(),
                inv_diag: inverse_diagonal(l),
            }
        };
        Ok(Self { backend, config })
    }

    pub fn solve_mean_zero(&self, b: &[f64]) -> Result<Vec<f64>> {
        match &self.backend {
            Backend::Empty => Ok(Vec::new()),
            Backend::Dense(chol) => {
                let mut x = chol.solve(&DVector::from_column_slice(b)).as_slice().to_vec();
                remove_mean(&mut x);
                Ok(x)
            }
            Backend::Iterative { a, inv_diag } => {
                pcg(a, inv_diag, b, self.config.tol, self.config.cap(b.len()), true)
            }
        }
    }
}

/// One-shot SPD solve.
pub fn solve_spd(a: &CsrMatrix, b: &[f64], tol: f64) -> Result<Vec<f64>> {
    let config = SolverConfig {
        tol,
        ..SolverConfig::default()
    };
    SpdSolver::new(a, config)?.solve(b)
}

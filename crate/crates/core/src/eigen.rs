//! Two smallest non-trivial eigenpairs of a PSD operator with nullspace
//! `span(1)`, by block inverse iteration with Rayleigh–Ritz.
//!
//! The all-ones direction is deflated explicitly; two extra guard vectors
//! ride along in the block so that the convergence rate is governed by the
//! gap to the fifth non-trivial eigenvalue rather than the third.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::schur::PsdOperator;
use crate::solver::{dot, norm, remove_mean};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig {
    /// Stop when both residuals `‖Av − λv‖` (unit `v`) fall below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Total block width including guard vectors (at least 2).
    pub block: usize,
    /// Seed for the random starting block.
    pub seed: u64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 1000,
            block: 4,
            seed: 0x5eed,
        }
    }
}

/// Two minimal non-trivial eigenpairs.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairSet {
    /// Ascending.
    pub values: [f64; 2],
    /// `m × 2` rows; columns orthonormal and mean-zero.
    pub vectors: Vec<[f64; 2]>,
    pub residuals: [f64; 2],
    pub iterations: usize,
}

impl EigenPairSet {
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.vectors.iter().map(|r| r[j]).collect()
    }

    pub fn sum(&self) -> f64 {
        self.values[0] + self.values[1]
    }
}

/// Orthonormalizes `cols` in place (two passes of modified Gram–Schmidt,
/// with the all-ones direction removed first). Returns false if a column
/// collapsed.
fn orthonormalize(cols: &mut [Vec<f64>]) -> bool {
    for j in 0..cols.len() {
        remove_mean(&mut cols[j]);
        for _pass in 0..2 {
            for i in 0..j {
                let (head, tail) = cols.split_at_mut(j);
                let c = dot(&head[i], &tail[0]);
                for (t, h) in tail[0].iter_mut().zip(&head[i]) {
                    *t -= c * h;
                }
            }
        }
        let nrm = norm(&cols[j]);
        if !(nrm > 1e-300) {
            return false;
        }
        cols[j].iter_mut().for_each(|v| *v /= nrm);
    }
    true
}

fn random_block(m: usize, p: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..p)
        .map(|_| (0..m).map(|_| StandardNormal.sample(rng)).collect())
        .collect()
}

/// Computes the two smallest non-trivial eigenpairs of `op`.
pub fn two_min_nontrivial_eigvecs<O: PsdOperator + ?Sized>(
    op: &O,
    config: &EigenConfig,
) -> Result<EigenPairSet> {
    let m = op.dim();
    if m < 3 {
        return Err(Error::Input(format!(
            "operator of size {m} has fewer than two non-trivial eigenpairs"
        )));
    }
    let p = config.block.max(2).min(m - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut x = random_block(m, p, &mut rng);
    while !orthonormalize(&mut x) {
        x = random_block(m, p, &mut rng);
    }

    let mut last_res = [f64::INFINITY; 2];
    for it in 0..=config.max_iter {
        // Rayleigh–Ritz on the current block
        let ax: Vec<Vec<f64>> = x.iter().map(|c| op.apply(c)).collect::<Result<_>>()?;
        let mut h = DMatrix::zeros(p, p);
        for i in 0..p {
            for j in 0..p {
                h[(i, j)] = dot(&x[i], &ax[j]);
            }
        }
        let h = (&h + h.transpose()) * 0.5;
        let eig = SymmetricEigen::new(h);
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let mut v = vec![vec![0.0; m]; p];
        let mut av = vec![vec![0.0; m]; p];
        for (dst, &src) in order.iter().enumerate() {
            for k in 0..p {
                let q = eig.eigenvectors[(k, src)];
                for r in 0..m {
                    v[dst][r] += q * x[k][r];
                    av[dst][r] += q * ax[k][r];
                }
            }
        }
        let lambda: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut res = [0.0; 2];
        for i in 0..2 {
            let r: Vec<f64> = av[i].iter().zip(&v[i]).map(|(a, b)| a - lambda[i] * b).collect();
            res[i] = norm(&r);
        }
        last_res = res;
        if res[0] < config.tol && res[1] < config.tol {
            let vectors = (0..m).map(|r| [v[0][r], v[1][r]]).collect();
            return Ok(EigenPairSet {
                values: [lambda[0], lambda[1]],
                vectors,
                residuals: res,
                iterations: it,
            });
        }
        if it == config.max_iter {
            break;
        }

        // inverse iteration step
        let mut next: Vec<Vec<f64>> = v.iter().map(|c| op.apply_pinv(c)).collect::<Result<_>>()?;
        if !orthonormalize(&mut next) {
            next = random_block(m, p, &mut rng);
            orthonormalize(&mut next);
        }
        x = next;
    }
    Err(Error::Convergence {
        iterations: config.max_iter,
        residual: last_res[0].max(last_res[1]),
    })
}

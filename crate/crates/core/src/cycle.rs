//! Closed-form spectral objects on the boundary cycle `C_n`: its Fourier
//! eigenbasis, the square root `L^{1/2}`, and the inverse-square-distance
//! Laplacian `L̃`.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Distance between positions `i` and `j` along a cycle of length `n`.
pub fn cycle_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// `λ_k(L_{C_n}) = 2 − 2cos(2πk/n)`
pub fn cycle_eigenvalue(k: usize, n: usize) -> f64 {
    2.0 - 2.0 * (2.0 * PI * k as f64 / n as f64).cos()
}

/// One orthonormal eigenvector of `L_{C_n}`.
#[derive(Debug, Clone)]
pub struct CycleMode {
    /// Frequency `k`.
    pub frequency: usize,
    pub eigenvalue: f64,
    pub vector: Vec<f64>,
}

/// The non-constant orthonormal eigenbasis of `L_{C_n}` ordered by
/// eigenvalue; each frequency below `n/2` contributes its cosine then its
/// sine vector, and for even `n` the alternating vector comes last.
pub fn cycle_modes(n: usize) -> Vec<CycleMode> {
    let mut modes = Vec::with_capacity(n.saturating_sub(1));
    let nf = n as f64;
    let s = (2.0 / nf).sqrt();
    for k in 1..n.div_ceil(2) {
        let lam = cycle_eigenvalue(k, n);
        let theta = 2.0 * PI * k as f64 / nf;
        let cos = (0..n).map(|j| s * (theta * (j + 1) as f64).cos()).collect();
        let sin = (0..n).map(|j| s * (theta * (j + 1) as f64).sin()).collect();
        modes.push(CycleMode {
            frequency: k,
            eigenvalue: lam,
            vector: cos,
        });
        modes.push(CycleMode {
            frequency: k,
            eigenvalue: lam,
            vector: sin,
        });
    }
    if n.is_multiple_of(2) && n >= 2 {
        let a = 1.0 / nf.sqrt();
        modes.push(CycleMode {
            frequency: n / 2,
            eigenvalue: 4.0,
            vector: (0..n).map(|j| if j % 2 == 0 { a } else { -a }).collect(),
        });
    }
    modes
}

/// Laplacian of the cycle `C_n`, dense.
pub fn cycle_laplacian(n: usize) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        let j = (i + 1) % n;
        l[(i, i)] += 1.0;
        l[(j, j)] += 1.0;
        l[(i, j)] -= 1.0;
        l[(j, i)] -= 1.0;
    }
    l
}

/// `L_{C_n}^{1/2}` assembled from the sine/cosine eigenbasis. The matrix is
/// circulant, so only the first row is summed explicitly.
pub fn cycle_sqrt_laplacian(n: usize) -> Result<DMatrix<f64>> {
    if n < 3 {
        return Err(Error::Input(format!("cycle length {n} must be at least 3")));
    }
    let nf = n as f64;
    // entry at cycle offset d: (1/n) Σ_k sqrt(λ_k) cos(2πkd/n)
    let row: Vec<f64> = (0..n)
        .map(|d| {
            (1..n)
                .map(|k| {
                    let lam = cycle_eigenvalue(k, n).max(0.0);
                    lam.sqrt() * (2.0 * PI * (k * d) as f64 / nf).cos()
                })
                .sum::<f64>()
                / nf
        })
        .collect();
    Ok(DMatrix::from_fn(n, n, |i, j| row[cycle_distance(i, j, n)]))
}

/// Laplacian of the complete graph on the cycle with weights `1/d²`, where
/// `d` is the distance along the cycle.
pub fn tilde_laplacian(n: usize) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = cycle_distance(i, j, n) as f64;
            let w = 1.0 / (d * d);
            l[(i, j)] = -w;
            l[(j, i)] = -w;
            l[(i, i)] += w;
            l[(j, j)] += w;
        }
    }
    l
}

/// `∫₀² sin(πx/2) cos(φπx) dx` in closed form, `−4/(π(4φ² − 1))`.
pub fn sqrt_kernel_integral(phi: usize) -> f64 {
    let p = phi as f64;
    -4.0 / (PI * (4.0 * p * p - 1.0))
}

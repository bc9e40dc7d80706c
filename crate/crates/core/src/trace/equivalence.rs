//! Numerical spectral-equivalence constants between `S_Γ` and `L_Γ^{1/2}`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::cycle::cycle_modes;
use crate::error::{Error, Result};
use crate::schur::SchurOperator;

/// Largest boundary for which the pencil is formed densely.
pub const EQUIVALENCE_CAP: usize = 4096;

/// Extreme generalized Rayleigh quotients `⟨S_Γx,x⟩ / ⟨L_Γ^{1/2}x,x⟩` over
/// mean-zero `x`, with `c1 = 1/min` and `c2 = max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralEquivalence {
    pub min_quotient: f64,
    pub max_quotient: f64,
    pub c1: f64,
    pub c2: f64,
}

impl SpectralEquivalence {
    pub fn product(&self) -> f64 {
        self.c1 * self.c2
    }
}

/// Estimates `(c1, c2)` for the boundary cycle of `op` in its block order.
/// In the Fourier basis `Q` of the non-constant cycle modes `L_Γ^{1/2}` is
/// the diagonal `D = diag(√λ_k)`, so the pencil reduces to the symmetric
/// eigenproblem of `D^{−1/2} QᵀS_ΓQ D^{−1/2}`.
pub fn estimate_spectral_equivalence(op: &SchurOperator) -> Result<SpectralEquivalence> {
    let m = op.n_boundary();
    if m > EQUIVALENCE_CAP {
        return Err(Error::SizeCap {
            size: m,
            cap: EQUIVALENCE_CAP,
        });
    }
    if m < 3 {
        return Err(Error::Input(format!("boundary of {m} vertices is not a cycle")));
    }
    let s = op.to_dense()?;
    let modes = cycle_modes(m);
    let q = DMatrix::from_fn(m, modes.len(), |i, j| modes[j].vector[i]);
    let scale: Vec<f64> = modes.iter().map(|md| md.eigenvalue.sqrt().sqrt().recip()).collect();
    let mut b = q.transpose() * s * &q;
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            b[(i, j)] *= scale[i] * scale[j];
        }
    }
    let b = (&b + b.transpose()) * 0.5;
    let ev = SymmetricEigen::new(b).eigenvalues;
    let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(min > 0.0) {
        return Err(Error::Degenerate(format!(
            "Schur complement is singular on mean-zero vectors (min quotient {min:e})"
        )));
    }
    Ok(SpectralEquivalence {
        min_quotient: min,
        max_quotient: max,
        c1: 1.0 / min,
        c2: max,
    })
}

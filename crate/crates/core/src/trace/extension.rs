//! Extensions of boundary data into the interior.

use crate::blocks::BlockSystem;
use crate::error::{Error, Result};
use crate::graph::{wrap, ProductLayout};
use crate::schur::SchurOperator;
use crate::solver::SolverConfig;

/// The explicit low-energy extension on `G_{k,ℓ}`: layer `j` (1-based)
/// interpolates linearly between the window average
/// `a(i, j) = mean(φ(i−j+1), ..., φ(i+j−1))` and the global mean `a`, so
/// layer 1 reproduces `φ` and layer `ℓ` is constant. Vertex ids follow
/// [`ProductLayout`].
pub fn extension_gkl(phi: &[f64], k: usize, l: usize) -> Result<Vec<f64>> {
    if l < 2 {
        return Err(Error::Input(format!("extension needs ℓ ≥ 2, got {l}")));
    }
    if phi.len() != k || k < 3 {
        return Err(Error::Input(format!(
            "boundary vector has length {}, expected k = {k} ≥ 3",
            phi.len()
        )));
    }
    let lay = ProductLayout { k, l };
    let a = phi.iter().sum::<f64>() / k as f64;
    let mut u = vec![0.0; lay.vertex_count()];
    for j in 1..=l {
        let t = (j - 1) as f64 / (l - 1) as f64;
        let h = j as isize - 1;
        for i in 0..k as isize {
            let window: f64 = (-h..=h).map(|d| phi[wrap(i + d, k)]).sum();
            let aij = window / (2 * h + 1) as f64;
            u[lay.vertex(i, j - 1)] = t * a + (1.0 - t) * aij;
        }
    }
    Ok(u)
}

/// Harmonic extension: boundary values `φ`, interior solving
/// `(L_o + D_o) v_o = A_oΓ φ`. Returned in vertex order.
pub fn harmonic_extension(blocks: &BlockSystem, phi: &[f64], config: SolverConfig) -> Result<Vec<f64>> {
    harmonic_extension_with(&SchurOperator::new(blocks.clone(), config)?, phi)
}

/// [`harmonic_extension`] reusing an operator's factorization.
pub fn harmonic_extension_with(op: &SchurOperator, phi: &[f64]) -> Result<Vec<f64>> {
    let interior = op.harmonic_interior(phi)?;
    Ok(op.blocks().scatter(&interior, phi))
}

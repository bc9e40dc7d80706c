//! How much of a boundary embedding lies outside the low cycle modes.

use std::f64::consts::PI;

use serde::Serialize;

use crate::cycle::cycle_modes;
use crate::embedding::Embedding;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectionCheck {
    /// `Tr(((I − Π_{2i})X)ᵀ (I − Π_{2i})X)`
    pub residual: f64,
    /// `π c1 c2 / (i + 1)`
    pub bound: f64,
    pub holds: bool,
}

/// Projects both columns of the boundary embedding `x` onto the first `2i`
/// cycle modes (frequencies `1..=i`) and compares the squared mass left over
/// with `π c1 c2 / (i + 1)`. The bound is only claimed for (near-)optimal
/// normalized `x`; for other inputs the flag carries no meaning.
pub fn projection_mass_bound_check(x: &Embedding, i: usize, c1: f64, c2: f64) -> Result<ProjectionCheck> {
    let m = x.len();
    if m < 3 {
        return Err(Error::Input(format!("boundary of {m} vertices is not a cycle")));
    }
    let modes = cycle_modes(m);
    let keep = (2 * i).min(modes.len());
    let mut residual = 0.0;
    for col in 0..2 {
        let mut r = x.column(col);
        for md in &modes[..keep] {
            let a: f64 = md.vector.iter().zip(&r).map(|(v, w)| v * w).sum();
            for (w, v) in r.iter_mut().zip(&md.vector) {
                *w -= a * v;
            }
        }
        // the constant vector is not among the modes
        let mean = r.iter().sum::<f64>() / m as f64;
        residual += r.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    }
    let bound = PI * c1 * c2 / (i + 1) as f64;
    Ok(ProjectionCheck {
        residual,
        bound,
        holds: residual <= bound,
    })
}

//! Planar coordinate tables, Tutte extension, and the Hall / boundary energies.

use std::f64::consts::PI;

use nalgebra::{Matrix2, SymmetricEigen};

use crate::blocks::BlockSystem;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::schur::SchurOperator;
use crate::solver::SolverConfig;

/// Whether an embedding covers every vertex or only the boundary face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Full,
    Boundary,
}

/// An `m × 2` table of planar coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub coords: Vec<[f64; 2]>,
    pub scope: Scope,
}

impl Embedding {
    pub fn new(coords: Vec<[f64; 2]>, scope: Scope) -> Self {
        Self { coords, scope }
    }

    pub fn boundary(coords: Vec<[f64; 2]>) -> Self {
        Self::new(coords, Scope::Boundary)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.coords.iter().map(|r| r[j]).collect()
    }

    pub fn from_columns(x: &[f64], y: &[f64], scope: Scope) -> Self {
        Self::new(x.iter().zip(y).map(|(&a, &b)| [a, b]).collect(), scope)
    }

    /// `XᵀX` as a 2×2 matrix.
    pub fn gram(&self) -> Matrix2<f64> {
        let mut g = Matrix2::zeros();
        for r in &self.coords {
            g[(0, 0)] += r[0] * r[0];
            g[(0, 1)] += r[0] * r[1];
            g[(1, 1)] += r[1] * r[1];
        }
        g[(1, 0)] = g[(0, 1)];
        g
    }

    pub fn column_means(&self) -> [f64; 2] {
        let m = self.coords.len().max(1) as f64;
        let s = self
            .coords
            .iter()
            .fold([0.0, 0.0], |acc, r| [acc[0] + r[0], acc[1] + r[1]]);
        [s[0] / m, s[1] / m]
    }

    /// Centered (`|column means| ≤ 1e−10`) and whitened
    /// (`‖XᵀX − I‖ ≤ 1e−8`).
    pub fn is_normalized(&self) -> bool {
        let [mx, my] = self.column_means();
        mx.abs() <= 1e-10
            && my.abs() <= 1e-10
            && (self.gram() - Matrix2::identity()).abs().max() <= 1e-8
    }

    /// Applies `x ↦ x A` to every row.
    pub fn transform(&self, a: &Matrix2<f64>) -> Self {
        let coords = self
            .coords
            .iter()
            .map(|r| {
                [
                    r[0] * a[(0, 0)] + r[1] * a[(1, 0)],
                    r[0] * a[(0, 1)] + r[1] * a[(1, 1)],
                ]
            })
            .collect();
        Self::new(coords, self.scope)
    }
}

/// Interior coordinates `X_o = (L_o + D_o)⁻¹ A_oΓ X_Γ`, returned as a full
/// embedding in vertex order.
pub fn tutte_extend(blocks: &BlockSystem, boundary: &Embedding, config: SolverConfig) -> Result<Embedding> {
    let op = SchurOperator::new(blocks.clone(), config)?;
    tutte_extend_with(&op, boundary)
}

/// [`tutte_extend`] reusing an existing operator's interior factorization.
pub fn tutte_extend_with(op: &SchurOperator, boundary: &Embedding) -> Result<Embedding> {
    let blocks = op.blocks();
    if boundary.len() != blocks.n_boundary() {
        return Err(Error::Input(format!(
            "boundary embedding has {} rows, boundary has {}",
            boundary.len(),
            blocks.n_boundary()
        )));
    }
    let mut cols = Vec::with_capacity(2);
    for j in 0..2 {
        let xb = boundary.column(j);
        let xo = op.harmonic_interior(&xb)?;
        cols.push(blocks.scatter(&xo, &xb));
    }
    Ok(Embedding::from_columns(&cols[0], &cols[1], Scope::Full))
}

/// Hall's energy `Tr(XᵀLX)`: total squared edge length.
pub fn hall_energy(g: &Graph, x: &Embedding) -> Result<f64> {
    if x.scope != Scope::Full || x.len() != g.vertex_count() {
        return Err(Error::Input(format!(
            "hall energy needs a full embedding with {} rows",
            g.vertex_count()
        )));
    }
    Ok(g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let dx = x.coords[u][0] - x.coords[v][0];
            let dy = x.coords[u][1] - x.coords[v][1];
            dx * dx + dy * dy
        })
        .sum())
}

/// `h_Γ(X_Γ) = Tr(X_Γᵀ S_Γ X_Γ)`, matrix-free.
pub fn boundary_energy(op: &SchurOperator, boundary: &Embedding) -> Result<f64> {
    if boundary.len() != op.n_boundary() {
        return Err(Error::Input(format!(
            "boundary embedding has {} rows, boundary has {}",
            boundary.len(),
            op.n_boundary()
        )));
    }
    let mut total = 0.0;
    for j in 0..2 {
        total += op.quadratic_form(&boundary.column(j))?;
    }
    Ok(total)
}

/// Regular polygon `s·(cos 2πj/n, sin 2πj/n)`, `j = 1..n`, with
/// `s = sqrt(2/n)` so that `XᵀX = I`.
pub fn circle_embedding(n: usize) -> Result<Embedding> {
    if n < 3 {
        return Err(Error::Input(format!("circle embedding needs n ≥ 3, got {n}")));
    }
    let s = (2.0 / n as f64).sqrt();
    let coords = (1..=n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            [s * t.cos(), s * t.sin()]
        })
        .collect();
    Ok(Embedding::boundary(coords))
}

/// Centers, then whitens with the eigendecomposition of the 2×2 Gram matrix
/// (`X ← X Q Λ^{−1/2}`).
pub fn normalize(x: &Embedding) -> Result<Embedding> {
    if x.len() < 3 {
        return Err(Error::Rank(format!("{} points cannot span the plane", x.len())));
    }
    let [mx, my] = x.column_means();
    let centered = Embedding::new(
        x.coords.iter().map(|r| [r[0] - mx, r[1] - my]).collect(),
        x.scope,
    );
    let eig = SymmetricEigen::new(centered.gram());
    let (lo, hi) = (
        eig.eigenvalues[0].min(eig.eigenvalues[1]),
        eig.eigenvalues[0].max(eig.eigenvalues[1]),
    );
    if !(hi > 0.0) || lo <= 1e-12 * hi {
        return Err(Error::Rank("points are collinear after centering".into()));
    }
    let mut w = eig.eigenvectors;
    for j in 0..2 {
        let s = eig.eigenvalues[j].sqrt();
        w[(0, j)] /= s;
        w[(1, j)] /= s;
    }
    Ok(centered.transform(&w))
}

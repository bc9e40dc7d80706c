//! The Schur complement `S_Γ = L_Γ + D_Γ − A_oΓᵀ (L_o + D_o)⁻¹ A_oΓ` as an
//! implicit operator, plus a dense elimination oracle.

use nalgebra::{Cholesky, DMatrix};

use crate::blocks::BlockSystem;
use crate::error::{Error, Result};
use crate::solver::{dot, norm, remove_mean, LaplacianSolver, SolverConfig, SpdSolver};

/// Relative mean a vector may carry before `apply_inverse` refuses it.
pub const MEAN_ZERO_TOL: f64 = 1e-8;

/// Default refusal size for [`dense_schur`].
pub const DENSE_CAP: usize = 2000;

/// Symmetric positive semi-definite operator whose nullspace is `span(1)`.
pub trait PsdOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>>;
    /// Pseudo-inverse on mean-zero input; output is mean-zero.
    fn apply_pinv(&self, x: &[f64]) -> Result<Vec<f64>>;
}

/// Matrix-free `S_Γ`. Never forms the dense complement.
#[derive(Debug, Clone)]
pub struct SchurOperator {
    blocks: BlockSystem,
    interior: SpdSolver,
    full: LaplacianSolver,
    config: SolverConfig,
}

impl SchurOperator {
    pub fn new(blocks: BlockSystem, config: SolverConfig) -> Result<Self> {
        let interior = SpdSolver::new(blocks.interior_matrix(), config)?;
        let full = LaplacianSolver::new(blocks.laplacian(), config)?;
        Ok(Self {
            blocks,
            interior,
            full,
            config,
        })
    }

    pub fn blocks(&self) -> &BlockSystem {
        &self.blocks
    }

    pub fn config(&self) -> SolverConfig {
        self.config
    }

    pub fn n_boundary(&self) -> usize {
        self.blocks.n_boundary()
    }

    /// Interior values of the harmonic extension: `(L_o + D_o)⁻¹ A_oΓ x`.
    pub fn harmonic_interior(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut rhs = vec![0.0; self.blocks.n_interior()];
        self.blocks.coupling_matrix().mul_vec(x, &mut rhs);
        self.interior.solve(&rhs)
    }

    /// `S_Γ x` in two steps: solve the interior system, then combine.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let y = self.harmonic_interior(x)?;
        let m = self.n_boundary();
        let mut out = vec![0.0; m];
        self.blocks.boundary_matrix().mul_vec(x, &mut out);
        let mut aty = vec![0.0; m];
        self.blocks.coupling_matrix().mul_vec_transpose(&y, &mut aty);
        for (o, a) in out.iter_mut().zip(&aty) {
            *o -= a;
        }
        Ok(out)
    }

    /// `S_Γ⁻¹ x` on the mean-zero subspace via the full Laplacian system with
    /// right-hand side `(0, x)`, reading back the boundary block.
    pub fn apply_inverse(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut x = x.to_vec();
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let scale = norm(&x) / (x.len() as f64).sqrt();
        if mean.abs() > MEAN_ZERO_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Input(format!(
                "S_Γ⁻¹ needs a mean-zero vector (mean {mean:.3e})"
            )));
        }
        remove_mean(&mut x);
        let rhs = self.blocks.scatter(&vec![0.0; self.blocks.n_interior()], &x);
        let z = self.full.solve_mean_zero(&rhs)?;
        let mut y = self.blocks.gather_boundary(&z);
        remove_mean(&mut y);
        Ok(y)
    }

    /// `<S_Γ x, x>`
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64> {
        Ok(dot(&self.apply(x)?, x))
    }

    /// Dense `S_Γ` assembled column by column from operator applications.
    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        let m = self.n_boundary();
        let mut s = DMatrix::zeros(m, m);
        let mut e = vec![0.0; m];
        for j in 0..m {
            e[j] = 1.0;
            let col = self.apply(&e)?;
            e[j] = 0.0;
            for i in 0..m {
                s[(i, j)] = col[i];
            }
        }
        // symmetrize away solver noise
        Ok((&s + s.transpose()) * 0.5)
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_boundary() {
            return Err(Error::Input(format!(
                "vector has length {}, boundary has {}",
                x.len(),
                self.n_boundary()
            )));
        }
        Ok(())
    }
}

impl PsdOperator for SchurOperator {
    fn dim(&self) -> usize {
        self.n_boundary()
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        SchurOperator::apply(self, x)
    }

    fn apply_pinv(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.apply_inverse(x)
    }
}

/// Dense Schur complement by Cholesky elimination of the interior block.
pub fn dense_schur(blocks: &BlockSystem, cap: usize) -> Result<DMatrix<f64>> {
    let n_o = blocks.n_interior();
    if n_o > cap {
        return Err(Error::SizeCap { size: n_o, cap });
    }
    let l22 = blocks.boundary_matrix().to_dense();
    if n_o == 0 {
        return Ok(l22);
    }
    let l11 = blocks.interior_matrix().to_dense();
    let a = blocks.coupling_matrix().to_dense();
    let chol = Cholesky::new(l11)
        .ok_or_else(|| Error::Validation("interior block is not positive definite".into()))?;
    let x = chol.solve(&a);
    let s = l22 - a.transpose() * x;
    Ok((&s + s.transpose()) * 0.5)
}

/// A dense symmetric PSD matrix with nullspace `span(1)`, e.g. a connected
/// graph Laplacian or a dense Schur complement.
#[derive(Debug, Clone)]
pub struct DenseLaplacian {
    matrix: DMatrix<f64>,
    shifted: Cholesky<f64, nalgebra::Dyn>,
}

impl DenseLaplacian {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let m = matrix.nrows();
        if m == 0 || matrix.ncols() != m {
            return Err(Error::Input("dense operator must be square and non-empty".into()));
        }
        let shifted = Cholesky::new(matrix.add_scalar(1.0 / m as f64))
            .ok_or_else(|| Error::Input("operator is not PSD with nullspace span(1)".into()))?;
        Ok(Self { matrix, shifted })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

impl PsdOperator for DenseLaplacian {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let v = nalgebra::DVector::from_column_slice(x);
        Ok((&self.matrix * v).as_slice().to_vec())
    }

    fn apply_pinv(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut b = x.to_vec();
        remove_mean(&mut b);
        let mut y = self
            .shifted
            .solve(&nalgebra::DVector::from_column_slice(&b))
            .as_slice()
            .to_vec();
        remove_mean(&mut y);
        Ok(y)
    }
}

/// Sparse graph Laplacian `L_G` as a [`PsdOperator`].
#[derive(Debug, Clone)]
pub struct GraphLaplacianOperator {
    laplacian: crate::sparse::CsrMatrix,
    solver: LaplacianSolver,
}

impl GraphLaplacianOperator {
    pub fn new(blocks: &BlockSystem, config: SolverConfig) -> Result<Self> {
        Ok(Self {
            laplacian: blocks.laplacian().clone(),
            solver: LaplacianSolver::new(blocks.laplacian(), config)?,
        })
    }
}

impl PsdOperator for GraphLaplacianOperator {
    fn dim(&self) -> usize {
        self.laplacian.rows()
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; x.len()];
        self.laplacian.mul_vec(x, &mut y);
        Ok(y)
    }

    fn apply_pinv(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut b = x.to_vec();
        remove_mean(&mut b);
        self.solver.solve_mean_zero(&b)
    }
}

//! Interior/boundary partition of the graph Laplacian.
//!
//! With interior vertices first and boundary vertices last,
//!
//! ```text
//! L_G = [ L_o + D_o    -A_oΓ      ]
//!       [ -A_oΓᵀ       L_Γ + D_Γ  ]
//! ```
//!
//! `A_oΓ` is stored with non-negative entries (the sign lives in the formulas).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{BoundaryFace, Graph};
use crate::sparse::CsrMatrix;

#[derive(Debug, Clone)]
pub struct BlockSystem {
    interior: CsrMatrix,
    coupling: CsrMatrix,
    boundary: CsrMatrix,
    laplacian: CsrMatrix,
    interior_index: Vec<usize>,
    boundary_index: Vec<usize>,
}

impl BlockSystem {
    /// Partitions `L_G` by `gamma`. The graph must be connected; when
    /// `validate` is set, Γ must also induce a simple cycle.
    pub fn new(g: &Graph, gamma: &BoundaryFace, validate: bool) -> Result<Self> {
        if validate {
            gamma.validate(g)?;
        }
        if gamma.vertices().iter().any(|&v| v >= g.vertex_count()) {
            return Err(Error::Input("boundary vertex outside the graph".into()));
        }
        if !g.is_connected() {
            return Err(Error::Validation("graph is not connected".into()));
        }
        let n = g.vertex_count();
        let interior_index = gamma.interior(n);
        let boundary_index = gamma.vertices().to_vec();

        // local position of every vertex within its block
        let mut local = vec![(false, 0usize); n];
        for (p, &v) in interior_index.iter().enumerate() {
            local[v] = (true, p);
        }
        for (p, &v) in boundary_index.iter().enumerate() {
            local[v] = (false, p);
        }

        let (n_o, n_b) = (interior_index.len(), boundary_index.len());
        let mut t_int = Vec::new();
        let mut t_cpl = Vec::new();
        let mut t_bnd = Vec::new();
        let mut t_full = Vec::new();
        for v in 0..n {
            let d = g.degree(v) as f64;
            let (is_int, p) = local[v];
            if is_int {
                t_int.push((p, p, d));
            } else {
                t_bnd.push((p, p, d));
            }
            t_full.push((v, v, d));
        }
        for &(u, v) in g.edges() {
            t_full.push((u, v, -1.0));
            t_full.push((v, u, -1.0));
            match (local[u], local[v]) {
                ((true, a), (true, b)) => {
                    t_int.push((a, b, -1.0));
                    t_int.push((b, a, -1.0));
                }
                ((false, a), (false, b)) => {
                    t_bnd.push((a, b, -1.0));
                    t_bnd.push((b, a, -1.0));
                }
                ((true, a), (false, b)) | ((false, b), (true, a)) => {
                    t_cpl.push((a, b, 1.0));
                }
            }
        }
        Ok(Self {
            interior: CsrMatrix::from_triplets(n_o, n_o, t_int),
            coupling: CsrMatrix::from_triplets(n_o, n_b, t_cpl),
            boundary: CsrMatrix::from_triplets(n_b, n_b, t_bnd),
            laplacian: CsrMatrix::from_triplets(n, n, t_full),
            interior_index,
            boundary_index,
        })
    }

    /// `L_o + D_o`
    pub fn interior_matrix(&self) -> &CsrMatrix {
        &self.interior
    }

    /// `A_oΓ` (non-negative entries)
    pub fn coupling_matrix(&self) -> &CsrMatrix {
        &self.coupling
    }

    /// `L_Γ + D_Γ`
    pub fn boundary_matrix(&self) -> &CsrMatrix {
        &self.boundary
    }

    /// Full `L_G` in the original vertex order.
    pub fn laplacian(&self) -> &CsrMatrix {
        &self.laplacian
    }

    pub fn interior_index(&self) -> &[usize] {
        &self.interior_index
    }

    pub fn boundary_index(&self) -> &[usize] {
        &self.boundary_index
    }

    pub fn n(&self) -> usize {
        self.interior_index.len() + self.boundary_index.len()
    }

    pub fn n_interior(&self) -> usize {
        self.interior_index.len()
    }

    pub fn n_boundary(&self) -> usize {
        self.boundary_index.len()
    }

    /// Reassembles the block matrix and permutes it back to vertex order.
    pub fn reassemble(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, n);
        let (io, ib) = (&self.interior_index, &self.boundary_index);
        for r in 0..self.interior.rows() {
            for (c, v) in self.interior.row(r) {
                m[(io[r], io[c])] += v;
            }
            for (c, v) in self.coupling.row(r) {
                m[(io[r], ib[c])] -= v;
                m[(ib[c], io[r])] -= v;
            }
        }
        for r in 0..self.boundary.rows() {
            for (c, v) in self.boundary.row(r) {
                m[(ib[r], ib[c])] += v;
            }
        }
        m
    }

    /// Scatters interior and boundary parts into one vertex-ordered vector.
    pub fn scatter(&self, interior: &[f64], boundary: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n()];
        for (&v, &x) in self.interior_index.iter().zip(interior) {
            out[v] = x;
        }
        for (&v, &x) in self.boundary_index.iter().zip(boundary) {
            out[v] = x;
        }
        out
    }

    /// Reads the boundary block out of a vertex-ordered vector.
    pub fn gather_boundary(&self, full: &[f64]) -> Vec<f64> {
        self.boundary_index.iter().map(|&v| full[v]).collect()
    }
}

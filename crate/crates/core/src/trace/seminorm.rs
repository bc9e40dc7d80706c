//! Energy and boundary semi-norms.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{BoundaryFace, Graph, UNREACHABLE};

/// `|u|_G = <L_G u, u>^{1/2}`
pub fn energy_seminorm(g: &Graph, u: &[f64]) -> Result<f64> {
    Ok(g.laplacian_quadratic_form(u)?.sqrt())
}

/// The boundary semi-norm `|φ|_Γ² = Σ_{p<q} (φ(p) − φ(q))² / d_G(p, q)²`
/// with distances measured in the whole graph, stored as the Laplacian of
/// the weighted complete graph on Γ so that repeated evaluations are cheap.
#[derive(Debug, Clone)]
pub struct BoundarySeminorm {
    weights: DMatrix<f64>,
}

impl BoundarySeminorm {
    pub fn new(g: &Graph, gamma: &BoundaryFace) -> Result<Self> {
        let b = gamma.vertices();
        let m = b.len();
        let mut w = DMatrix::zeros(m, m);
        for p in 0..m {
            let dist = g.bfs_distances(b[p]);
            for q in (p + 1)..m {
                let d = dist[b[q]];
                if d == UNREACHABLE {
                    return Err(Error::Validation(format!(
                        "boundary vertices {} and {} are disconnected",
                        b[p] + 1,
                        b[q] + 1
                    )));
                }
                let x = 1.0 / (d * d) as f64;
                w[(p, q)] = -x;
                w[(q, p)] = -x;
                w[(p, p)] += x;
                w[(q, q)] += x;
            }
        }
        Ok(Self { weights: w })
    }

    /// Laplacian whose quadratic form is `|φ|_Γ²`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn value(&self, phi: &[f64]) -> Result<f64> {
        let m = self.weights.nrows();
        if phi.len() != m {
            return Err(Error::Input(format!(
                "boundary vector has length {}, boundary has {m} vertices",
                phi.len()
            )));
        }
        let mut s = 0.0;
        for p in 0..m {
            for q in (p + 1)..m {
                let d = phi[p] - phi[q];
                s -= self.weights[(p, q)] * d * d;
            }
        }
        Ok(s.sqrt())
    }
}

/// `|φ|_Γ`; see [`BoundarySeminorm`].
pub fn boundary_seminorm(g: &Graph, gamma: &BoundaryFace, phi: &[f64]) -> Result<f64> {
    BoundarySeminorm::new(g, gamma)?.value(phi)
}

/// `<M x, x>` for a dense symmetric matrix.
pub(crate) fn dense_form(m: &DMatrix<f64>, x: &[f64]) -> f64 {
    let v = nalgebra::DVector::from_column_slice(x);
    (m * &v).dot(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_gkl;
    use crate::cycle::cycle_distance;

    #[test]
    fn triangle_energy() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!((energy_seminorm(&g, &[1.0, 0.0, 0.0]).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(energy_seminorm(&g, &[4.0; 3]).unwrap(), 0.0);
    }

    #[test]
    fn c8_unit_vector() {
        let g = Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8))).unwrap();
        let gamma = BoundaryFace::new((0..8).collect(), 8).unwrap();
        let mut phi = vec![0.0; 8];
        phi[0] = 1.0;
        let v = boundary_seminorm(&g, &gamma, &phi).unwrap();
        assert!((v - (401.0f64 / 144.0).sqrt()).abs() < 1e-14);
        assert_eq!(boundary_seminorm(&g, &gamma, &[2.0; 8]).unwrap(), 0.0);
    }

    #[test]
    fn product_graph_distances_are_cycle_distances() {
        for star in [false, true] {
            let (g, gamma) = build_gkl(14, 3, star).unwrap();
            for p in 0..14 {
                let d = g.bfs_distances(p);
                for q in 0..14 {
                    assert_eq!(d[q], cycle_distance(p, q, 14));
                }
            }
            let s = BoundarySeminorm::new(&g, &gamma).unwrap();
            assert!((s.matrix() - crate::cycle::tilde_laplacian(14)).abs().max() < 1e-15);
        }
    }

    #[test]
    fn homogeneous_and_shift_invariant() {
        let (g, gamma) = build_gkl(10, 2, false).unwrap();
        let s = BoundarySeminorm::new(&g, &gamma).unwrap();
        let phi: Vec<f64> = (0..10).map(|i| (i as f64).sin()).collect();
        let a = s.value(&phi).unwrap();
        let scaled: Vec<f64> = phi.iter().map(|v| -3.0 * v + 7.0).collect();
        assert!((s.value(&scaled).unwrap() - 3.0 * a).abs() < 1e-12);
        assert!((dense_form(s.matrix(), &phi).sqrt() - a).abs() < 1e-12);
    }
}

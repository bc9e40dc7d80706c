//! Convex boundary embeddings with low Schur energy.
//!
//! Start from the two minimal non-trivial eigenvectors of `S_Γ`. If their
//! drawing of the boundary cycle crosses itself, fall back to the circle
//! embedding `X_C`; if it is already convex it is optimal and returned as is.
//! Otherwise convexify, and then repeatedly smooth with `S_Γ⁻¹`, convexify
//! and renormalize while the energy keeps dropping by more than `tol`.

use serde::Serialize;

use crate::eigen::{two_min_nontrivial_eigvecs, EigenConfig, EigenPairSet};
use crate::embedding::{boundary_energy, circle_embedding, normalize, Embedding};
use crate::error::{Error, Result};
use crate::geometry::{is_convex_position, make_convex, polygon_crossings, CrossingMethod};
use crate::schur::SchurOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialSource {
    SchurEigvecs,
    CircleFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    ExactEigvecConvex,
    NonplanarSmooth,
    NoImprovement,
    IterationCap,
}

/// One accepted iterate. Iteration 0 is the starting embedding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub iteration: usize,
    pub energy: f64,
    pub planar: bool,
    pub convex: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmTrace {
    pub initial_source: InitialSource,
    /// Accepted smoothing steps.
    pub iterations: usize,
    /// `h_Γ` of the starting embedding followed by one entry per accepted
    /// step; strictly decreasing by more than `tol`.
    pub energy_history: Vec<f64>,
    pub termination: Termination,
    pub steps: Vec<StepRecord>,
    /// `λ₁ + λ₂` of `S_Γ`, the unconstrained minimum.
    pub eigenvalue_sum: f64,
    /// `h_Γ(X_C)`.
    pub circle_energy: f64,
    pub tol: f64,
}

impl AlgorithmTrace {
    fn new() -> Self {
        Self {
            initial_source: InitialSource::SchurEigvecs,
            iterations: 0,
            energy_history: Vec::new(),
            termination: Termination::IterationCap,
            steps: Vec::new(),
            eigenvalue_sum: f64::NAN,
            circle_energy: f64::NAN,
            tol: f64::NAN,
        }
    }

    pub fn final_energy(&self) -> f64 {
        self.energy_history.last().copied().unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedOptions {
    /// Minimum energy decrease for accepting a step; `None` means
    /// `1e−9 · h_Γ(X_C)`.
    pub tol: Option<f64>,
    pub max_iter: usize,
    pub eigen: EigenConfig,
    pub crossings: CrossingMethod,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        Self {
            tol: None,
            max_iter: 100,
            eigen: EigenConfig::default(),
            crossings: CrossingMethod::BruteForce,
        }
    }
}

/// A failure inside [`embed_boundary`] together with the trace so far.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedFailure {
    pub error: Error,
    pub trace: AlgorithmTrace,
}

impl std::fmt::Display for EmbedFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (after {} accepted steps)", self.error, self.trace.iterations)
    }
}

impl std::error::Error for EmbedFailure {}

impl From<EmbedFailure> for Error {
    fn from(f: EmbedFailure) -> Self {
        f.error
    }
}

/// Boundary embedding together with the eigenpairs it started from.
#[derive(Debug, Clone)]
pub struct BoundaryResult {
    pub embedding: Embedding,
    pub trace: AlgorithmTrace,
    pub eigenpairs: EigenPairSet,
}

/// Applies `S_Γ⁻¹` to both columns.
pub fn smooth(op: &SchurOperator, x: &Embedding) -> Result<Embedding> {
    let a = op.apply_inverse(&x.column(0))?;
    let b = op.apply_inverse(&x.column(1))?;
    Ok(Embedding::from_columns(&a, &b, x.scope))
}

/// Whether the closed boundary polygon drawn by `x` is free of crossings.
pub fn is_planar_boundary(x: &Embedding, method: CrossingMethod) -> Result<bool> {
    Ok(polygon_crossings(&x.coords, method)?.planar)
}

/// Strict convex position; coincident rows count as not convex.
pub fn is_convex_boundary(x: &Embedding) -> bool {
    is_convex_position(&x.coords).unwrap_or(false)
}

/// `normalize(make_convex(x))`.
pub fn convexify(x: &Embedding) -> Result<Embedding> {
    normalize(&Embedding::new(make_convex(&x.coords)?, x.scope))
}

struct Run<'a> {
    op: &'a SchurOperator,
    opts: EmbedOptions,
    trace: AlgorithmTrace,
}

impl Run<'_> {
    fn accept(&mut self, energy: f64, planar: bool, convex: bool) {
        self.trace.steps.push(StepRecord {
            iteration: self.trace.energy_history.len(),
            energy,
            planar,
            convex,
        });
        self.trace.energy_history.push(energy);
    }

    fn go(&mut self, pairs: Option<EigenPairSet>) -> Result<(Embedding, EigenPairSet)> {
        let op = self.op;
        let pairs = match pairs {
            Some(p) => p,
            None => two_min_nontrivial_eigvecs(op, &self.opts.eigen)?,
        };
        self.trace.eigenvalue_sum = pairs.sum();
        let xc = circle_embedding(op.n_boundary())?;
        let h_c = boundary_energy(op, &xc)?;
        self.trace.circle_energy = h_c;
        let tol = self.opts.tol.unwrap_or(1e-9 * h_c);
        self.trace.tol = tol;

        let xs = Embedding::boundary(pairs.vectors.clone());
        let mut x;
        let mut h;
        if !is_planar_boundary(&xs, self.opts.crossings)? {
            self.trace.initial_source = InitialSource::CircleFallback;
            x = xc.clone();
            h = h_c;
        } else if is_convex_boundary(&xs) {
            let h_s = boundary_energy(op, &xs)?;
            self.accept(h_s, true, true);
            self.trace.termination = Termination::ExactEigvecConvex;
            return Ok((xs, pairs));
        } else {
            x = convexify(&xs)?;
            h = boundary_energy(op, &x)?;
            if h > h_c {
                x = xc.clone();
                h = h_c;
            }
        }
        self.accept(h, true, true);

        self.trace.termination = Termination::IterationCap;
        for _ in 0..self.opts.max_iter {
            let y = smooth(op, &x)?;
            if !is_planar_boundary(&y, self.opts.crossings)? {
                self.trace.termination = Termination::NonplanarSmooth;
                break;
            }
            let y = if is_convex_boundary(&y) {
                normalize(&y)?
            } else {
                convexify(&y)?
            };
            let h_y = boundary_energy(op, &y)?;
            if h - h_y > tol {
                x = y;
                h = h_y;
                self.trace.iterations += 1;
                self.accept(h, true, true);
            } else {
                self.trace.termination = Termination::NoImprovement;
                break;
            }
        }
        Ok((x, pairs))
    }
}

/// Runs the boundary algorithm on `op`. The result is planar, convex (weakly,
/// after make-convex), normalized, and never worse than `X_C`.
pub fn embed_boundary(
    op: &SchurOperator,
    opts: &EmbedOptions,
) -> std::result::Result<BoundaryResult, EmbedFailure> {
    run(op, None, opts)
}

/// [`embed_boundary`] starting from already computed eigenpairs of `op`.
pub fn embed_boundary_from(
    op: &SchurOperator,
    pairs: EigenPairSet,
    opts: &EmbedOptions,
) -> std::result::Result<BoundaryResult, EmbedFailure> {
    run(op, Some(pairs), opts)
}

fn run(
    op: &SchurOperator,
    pairs: Option<EigenPairSet>,
    opts: &EmbedOptions,
) -> std::result::Result<BoundaryResult, EmbedFailure> {
    let mut run = Run {
        op,
        opts: *opts,
        trace: AlgorithmTrace::new(),
    };
    match run.go(pairs) {
        Ok((embedding, eigenpairs)) => Ok(BoundaryResult {
            embedding,
            trace: run.trace,
            eigenpairs,
        }),
        Err(error) => Err(EmbedFailure {
            error,
            trace: run.trace,
        }),
    }
}

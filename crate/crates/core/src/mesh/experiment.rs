//! Laplacian versus Schur-complement boundary embeddings on random Delaunay
//! meshes, aggregated into one statistics row per (shape, n).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::BlockSystem;
use crate::boundary_opt::{convexify, embed_boundary_from, is_convex_boundary, AlgorithmTrace, EmbedOptions};
use crate::eigen::two_min_nontrivial_eigvecs;
use crate::embedding::{boundary_energy, circle_embedding, normalize, Embedding};
use crate::error::{Error, Result};
use crate::geometry::{fraction_not_on_hull, polygon_crossings};
use crate::mesh::delaunay::{delaunay, extract_graph};
use crate::mesh::sample::{sample_points_with, Shape};
use crate::schur::{GraphLaplacianOperator, SchurOperator};
use crate::solver::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub shape: Shape,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverConfig,
    pub embed: EmbedOptions,
}

impl ExperimentConfig {
    pub fn new(shape: Shape, n: usize, trials: usize, seed: u64) -> Self {
        Self {
            shape,
            n,
            trials,
            seed,
            solver: SolverConfig::default(),
            embed: EmbedOptions::default(),
        }
    }
}

/// Planarity and convexity of one eigenvector embedding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LayoutStats {
    pub planar: bool,
    pub crossings: usize,
    pub crossings_per_edge: f64,
    /// Fraction of rows off the strict hull; only for planar layouts.
    pub frac_not_convex: Option<f64>,
}

/// Everything measured on one mesh.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub boundary_len: usize,
    pub hull_chord: bool,
    /// `λ₁ + λ₂` of `S_Γ`.
    pub eigenvalue_sum: f64,
    pub xs: LayoutStats,
    pub xl: LayoutStats,
    pub h_s: f64,
    pub h_l: f64,
    /// `h_Γ(X_sc)`, defined when `X_s` is planar.
    pub h_sc: Option<f64>,
    /// `h_Γ(X_lc)`, defined when `X_l` is planar.
    pub h_lc: Option<f64>,
    pub h_c: f64,
    pub h_alg: f64,
    pub alg: AlgorithmTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub error: String,
}

/// One row of the comparison table. Ratios are means of
/// `h_Γ(X_method) / h_Γ(X_s)` over the trials where the method's layout is
/// planar; `None` marks an empty average.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentStats {
    pub shape: Shape,
    pub n: usize,
    /// Trials that completed; failed ones are counted in `failed`.
    pub trials: usize,
    pub failed: usize,
    pub pct_planar_xs: Option<f64>,
    pub pct_planar_xl: Option<f64>,
    pub cross_per_edge_xs: Option<f64>,
    pub cross_per_edge_xl: Option<f64>,
    pub frac_nonconvex_xs: Option<f64>,
    pub frac_nonconvex_xl: Option<f64>,
    pub ratio_xl: Option<f64>,
    pub ratio_xsc: Option<f64>,
    pub ratio_xalg: Option<f64>,
    pub ratio_xlc: Option<f64>,
    pub ratio_xc: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub stats: ExperimentStats,
    pub records: Vec<TrialRecord>,
    pub failures: Vec<TrialFailure>,
}

fn layout_stats(x: &Embedding, cfg: &ExperimentConfig) -> Result<LayoutStats> {
    let rep = polygon_crossings(&x.coords, cfg.embed.crossings)?;
    Ok(LayoutStats {
        planar: rep.planar,
        crossings: rep.crossings,
        crossings_per_edge: rep.crossings_per_edge,
        frac_not_convex: if rep.planar {
            Some(fraction_not_on_hull(&x.coords)?)
        } else {
            None
        },
    })
}

/// The convex version of a planar layout.
fn convex_version(x: &Embedding) -> Result<Embedding> {
    if is_convex_boundary(x) {
        normalize(x)
    } else {
        convexify(x)
    }
}

/// Runs one trial on the mesh drawn from stream `trial` of the master seed.
pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let pts = sample_points_with(cfg.shape, cfg.n, &mut rng)?;
    let mesh = extract_graph(&delaunay(&pts)?)?;
    let blocks = BlockSystem::new(&mesh.graph, &mesh.boundary, !mesh.hull_chord)?;

    let lap = GraphLaplacianOperator::new(&blocks, cfg.solver)?;
    let lpairs = two_min_nontrivial_eigvecs(&lap, &cfg.embed.eigen)?;
    let op = SchurOperator::new(blocks, cfg.solver)?;
    let spairs = two_min_nontrivial_eigvecs(&op, &cfg.embed.eigen)?;

    let xs = normalize(&Embedding::boundary(spairs.vectors.clone()))?;
    let idx = op.blocks().boundary_index();
    let xl = normalize(&Embedding::boundary(idx.iter().map(|&v| lpairs.vectors[v]).collect()))?;
    let xc = circle_embedding(op.n_boundary())?;

    let s_stats = layout_stats(&xs, cfg)?;
    let l_stats = layout_stats(&xl, cfg)?;
    let h_sc = match s_stats.planar {
        true => Some(boundary_energy(&op, &convex_version(&xs)?)?),
        false => None,
    };
    let h_lc = match l_stats.planar {
        true => Some(boundary_energy(&op, &convex_version(&xl)?)?),
        false => None,
    };
    let alg = embed_boundary_from(&op, spairs.clone(), &cfg.embed)?;

    Ok(TrialRecord {
        trial,
        boundary_len: op.n_boundary(),
        hull_chord: mesh.hull_chord,
        eigenvalue_sum: spairs.sum(),
        xs: s_stats,
        xl: l_stats,
        h_s: boundary_energy(&op, &xs)?,
        h_l: boundary_energy(&op, &xl)?,
        h_sc,
        h_lc,
        h_c: boundary_energy(&op, &xc)?,
        h_alg: boundary_energy(&op, &alg.embedding)?,
        alg: alg.trace,
    })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (s, c) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (c > 0).then(|| s / c as f64)
}

/// Aggregates trial records into a table row.
pub fn aggregate(shape: Shape, n: usize, records: &[TrialRecord], failed: usize) -> ExperimentStats {
    let total = records.len();
    let pct = |f: &dyn Fn(&TrialRecord) -> bool| {
        (total > 0).then(|| 100.0 * records.iter().filter(|r| f(r)).count() as f64 / total as f64)
    };
    let ratio = |f: &dyn Fn(&TrialRecord) -> Option<f64>| mean(records.iter().filter_map(|r| f(r).map(|h| h / r.h_s)));
    ExperimentStats {
        shape,
        n,
        trials: total,
        failed,
        pct_planar_xs: pct(&|r| r.xs.planar),
        pct_planar_xl: pct(&|r| r.xl.planar),
        cross_per_edge_xs: mean(records.iter().filter(|r| !r.xs.planar).map(|r| r.xs.crossings_per_edge)),
        cross_per_edge_xl: mean(records.iter().filter(|r| !r.xl.planar).map(|r| r.xl.crossings_per_edge)),
        frac_nonconvex_xs: mean(records.iter().filter_map(|r| r.xs.frac_not_convex)),
        frac_nonconvex_xl: mean(records.iter().filter_map(|r| r.xl.frac_not_convex)),
        ratio_xl: ratio(&|r| r.xl.planar.then_some(r.h_l)),
        ratio_xsc: ratio(&|r| r.h_sc),
        ratio_xalg: ratio(&|r| Some(r.h_alg)),
        ratio_xlc: ratio(&|r| r.h_lc),
        ratio_xc: ratio(&|r| Some(r.h_c)),
    }
}

/// Runs `cfg.trials` independent trials in parallel. Trial `t` uses stream
/// `t` of a ChaCha8 generator seeded with `cfg.seed`, and aggregation runs in
/// trial order, so the result does not depend on the thread count. Failed
/// trials are reported and excluded from the averages.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    if cfg.n < 3 {
        return Err(Error::Input(format!("need at least 3 points, got {}", cfg.n)));
    }
    let outcomes: Vec<Result<TrialRecord>> = (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (trial, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(r) => records.push(r),
            Err(e) => failures.push(TrialFailure {
                trial,
                error: e.to_string(),
            }),
        }
    }
    Ok(ExperimentResult {
        stats: aggregate(cfg.shape, cfg.n, &records, failures.len()),
        records,
        failures,
    })
}

/// Column names of the statistics CSV.
pub const STATS_HEADER: [&str; 14] = [
    "shape",
    "n",
    "trials",
    "pct_planar_xs",
    "pct_planar_xl",
    "cross_per_edge_xs",
    "cross_per_edge_xl",
    "frac_nonconvex_xs",
    "frac_nonconvex_xl",
    "ratio_xl",
    "ratio_xsc",
    "ratio_xalg",
    "ratio_xlc",
    "ratio_xc",
];

/// Statistics CSV preceded by `# ` comment lines; undefined cells are empty.
pub fn format_stats_csv(rows: &[ExperimentStats], comments: &[String]) -> Result<String> {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(STATS_HEADER).map_err(|e| Error::Io(e.to_string()))?;
    let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.shape.to_string(),
            r.n.to_string(),
            r.trials.to_string(),
            cell(r.pct_planar_xs),
            cell(r.pct_planar_xl),
            cell(r.cross_per_edge_xs),
            cell(r.cross_per_edge_xl),
            cell(r.frac_nonconvex_xs),
            cell(r.frac_nonconvex_xl),
            cell(r.ratio_xl),
            cell(r.ratio_xsc),
            cell(r.ratio_xalg),
            cell(r.ratio_xlc),
            cell(r.ratio_xc),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is UTF-8"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_disk_run_is_deterministic() {
        let cfg = ExperimentConfig::new(Shape::Disk, 150, 3, 5);
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.failures.is_empty(), "{:?}", a.failures);
        assert_eq!(a.stats.trials, 3);
        for r in &a.records {
            let tol = 1e-9 * r.h_s;
            assert!((r.h_s - r.eigenvalue_sum).abs() < 1e-7 * r.h_s);
            for h in [Some(r.h_c), Some(r.h_alg), r.h_sc, r.h_lc, Some(r.h_l)].into_iter().flatten() {
                assert!(h >= r.h_s - tol);
            }
            assert!(r.h_alg <= r.h_c * (1.0 + 1e-12));
            if let Some(h_sc) = r.h_sc {
                assert!(r.h_alg <= h_sc * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn single_trial_is_reproducible_in_isolation() {
        let cfg = ExperimentConfig::new(Shape::Rectangle, 120, 4, 9);
        let all = run_experiment(&cfg).unwrap();
        let one = run_trial(&cfg, 2).unwrap();
        assert_eq!(all.records[2], one);
    }

    fn record(h_s: f64, planar_s: bool, planar_l: bool) -> TrialRecord {
        let stats = |planar: bool| LayoutStats {
            planar,
            crossings: if planar { 0 } else { 4 },
            crossings_per_edge: if planar { 0.0 } else { 0.1 },
            frac_not_convex: planar.then_some(0.5),
        };
        TrialRecord {
            trial: 0,
            boundary_len: 40,
            hull_chord: false,
            eigenvalue_sum: h_s,
            xs: stats(planar_s),
            xl: stats(planar_l),
            h_s,
            h_l: 2.0 * h_s,
            h_sc: planar_s.then_some(1.5 * h_s),
            h_lc: planar_l.then_some(3.0 * h_s),
            h_c: 1.25 * h_s,
            h_alg: 1.25 * h_s,
            alg: crate::boundary_opt::AlgorithmTrace {
                initial_source: crate::boundary_opt::InitialSource::SchurEigvecs,
                iterations: 0,
                energy_history: vec![1.25 * h_s],
                termination: crate::boundary_opt::Termination::NoImprovement,
                steps: Vec::new(),
                eigenvalue_sum: h_s,
                circle_energy: 1.25 * h_s,
                tol: 0.0,
            },
        }
    }

    #[test]
    fn aggregation_conditions_on_planarity() {
        let recs = [record(1.0, true, false), record(2.0, true, true), record(4.0, false, true)];
        let s = aggregate(Shape::Rectangle, 10, &recs, 1);
        assert_eq!(s.failed, 1);
        assert!((s.pct_planar_xs.unwrap() - 200.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.cross_per_edge_xs, Some(0.1));
        assert_eq!(s.ratio_xl, Some(2.0));
        assert_eq!(s.ratio_xsc, Some(1.5));
        assert_eq!(s.ratio_xlc, Some(3.0));
        assert_eq!(s.ratio_xc, Some(1.25));
        assert_eq!(s.frac_nonconvex_xs, Some(0.5));
        let none = aggregate(Shape::Disk, 10, &recs[1..2], 0);
        assert_eq!(none.cross_per_edge_xl, None);
    }

    #[test]
    fn csv_layout() {
        let recs = [record(1.0, true, true)];
        let s = aggregate(Shape::Disk, 1250, &recs, 0);
        let text = format_stats_csv(&[s], &["seed=7".into()]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# seed=7"));
        assert_eq!(lines.next().unwrap(), STATS_HEADER.join(","));
        assert_eq!(lines.next(), Some("disk,1250,1,100,100,,,0.5,0.5,2,1.5,1.25,3,1.25"));
    }
}

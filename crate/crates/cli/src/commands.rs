//! Subcommand bodies. Every artifact starts with the effective
//! configuration so that rerunning it reproduces the file.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use schur_embed::blocks::BlockSystem;
use schur_embed::boundary_opt::{embed_boundary, is_convex_boundary, is_planar_boundary, EmbedOptions};
use schur_embed::eigen::{two_min_nontrivial_eigvecs, EigenConfig};
use schur_embed::embedding::{boundary_energy, circle_embedding, normalize, tutte_extend_with, Embedding, Scope};
use schur_embed::geometry::CrossingMethod;
use schur_embed::graph::{BoundaryFace, Graph};
use schur_embed::io::{format_layout, read_graph, read_layout};
use schur_embed::mesh::{format_stats_csv, run_experiment, ExperimentConfig, Shape};
use schur_embed::schur::SchurOperator;
use schur_embed::solver::SolverConfig;
use schur_embed::svg::render_svg;
use schur_embed::trace::equivalence::EQUIVALENCE_CAP;
use schur_embed::trace::{certify_trace_bounds, estimate_spectral_equivalence};

use crate::{Command, Common, Failure};

pub fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Embed {
            input,
            common,
            svg,
            trace,
            step_tol,
            max_iter,
        } => embed(&input, &common, svg.as_deref(), trace.as_deref(), step_tol, max_iter),
        Command::Experiment {
            shape,
            n,
            trials,
            common,
            threads,
        } => experiment(&shape, &n, trials, &common, threads),
        Command::TraceCheck {
            k,
            ell,
            c,
            star,
            trials,
            common,
        } => trace_check(k, ell, c, star, trials, &common),
        Command::Schur { input, common } => schur(&input, &common),
        Command::Render { input, layout, svg } => render(&input, &layout, svg.as_deref()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn solver(common: &Common) -> Result<SolverConfig, Failure> {
    if !(common.tol > 0.0 && common.tol < 1.0) {
        return Err(Failure::usage(format!("--tol must lie in (0, 1), got {}", common.tol)));
    }
    Ok(SolverConfig {
        tol: common.tol,
        ..SolverConfig::default()
    })
}

fn eigen(common: &Common) -> EigenConfig {
    EigenConfig {
        seed: common.seed,
        ..EigenConfig::default()
    }
}

fn load(input: &Path) -> Result<(Graph, BoundaryFace), Failure> {
    let file = read_graph(input)?;
    let b = file
        .boundary
        .ok_or_else(|| Failure::invalid(format!("{}: boundary required", input.display())))?;
    Ok((file.graph, b))
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn embed(
    input: &Path,
    common: &Common,
    svg: Option<&Path>,
    trace: Option<&Path>,
    step_tol: Option<f64>,
    max_iter: usize,
) -> Result<(), Failure> {
    let header = format!(
        "schur-embed embed {} --seed {} --tol {:e}{} --max-iter {max_iter}",
        display(input),
        common.seed,
        common.tol,
        step_tol.map_or(String::new(), |t| format!(" --step-tol {t:e}")),
    );
    let (g, b) = load(input)?;
    let op = SchurOperator::new(BlockSystem::new(&g, &b, true)?, solver(common)?)?;
    let opts = EmbedOptions {
        tol: step_tol,
        max_iter,
        eigen: eigen(common),
        ..EmbedOptions::default()
    };
    let result = embed_boundary(&op, &opts);
    if let Some(path) = trace {
        let t = match &result {
            Ok(r) => &r.trace,
            Err(f) => &f.trace,
        };
        let mut lines = vec![json!({ "config": header, "initial_source": t.initial_source,
            "termination": t.termination, "eigenvalue_sum": t.eigenvalue_sum,
            "circle_energy": t.circle_energy, "tol": t.tol })
        .to_string()];
        lines.extend(t.steps.iter().map(|s| serde_json::to_string(s).expect("plain record")));
        fs::write(path, lines.join("\n") + "\n")?;
    }
    let result = result.map_err(|f| Failure::from(f.error))?;
    let x = tutte_extend_with(&op, &result.embedding)?;
    let comments = vec![
        header.clone(),
        format!(
            "boundary energy {:.12e}, lower bound {:.12e}, circle {:.12e}, {} steps, {:?}",
            result.trace.final_energy(),
            result.trace.eigenvalue_sum,
            result.trace.circle_energy,
            result.trace.iterations,
            result.trace.termination
        ),
    ];
    emit(common.out.as_deref(), &format_layout(&x.coords, &comments))?;
    if let Some(path) = svg {
        let drawing = render_svg(&g, &x, Some(&b))?;
        fs::write(path, format!("<!-- {header} -->\n{drawing}"))?;
    }
    Ok(())
}

fn experiment(shapes: &[Shape], ns: &[usize], trials: usize, common: &Common, threads: Option<usize>) -> Result<(), Failure> {
    if let Some(&bad) = ns.iter().find(|&&n| n < 3) {
        return Err(Failure::usage(format!("--n must be at least 3, got {bad}")));
    }
    if trials == 0 {
        return Err(Failure::usage("--trials must be positive"));
    }
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let join = |v: Vec<String>| v.join(",");
    let mut comments = vec![format!(
        "schur-embed experiment --shape {} --n {} --trials {trials} --seed {} --tol {:e}",
        join(shapes.iter().map(Shape::to_string).collect()),
        join(ns.iter().map(usize::to_string).collect()),
        common.seed,
        common.tol
    )];
    let mut rows = Vec::new();
    for &shape in shapes {
        for &n in ns {
            let mut cfg = ExperimentConfig::new(shape, n, trials, common.seed);
            cfg.solver = solver(common)?;
            cfg.embed.eigen = eigen(common);
            let result = run_experiment(&cfg)?;
            eprintln!("{shape} n={n}: {} trials, {} failed", result.stats.trials, result.stats.failed);
            for f in &result.failures {
                comments.push(format!("{shape} n={n} trial {} failed: {}", f.trial, f.error));
            }
            let chords = result.records.iter().filter(|r| r.hull_chord).count();
            if chords > 0 {
                comments.push(format!("{shape} n={n}: {chords} meshes with a hull chord"));
            }
            rows.push(result.stats);
        }
    }
    emit(common.out.as_deref(), &format_stats_csv(&rows, &comments)?)
}

fn trace_check(k: usize, l: usize, c: usize, star: bool, trials: usize, common: &Common) -> Result<(), Failure> {
    if 4 * l >= k {
        return Err(Failure::usage(format!("need 4ℓ < k, but 4ℓ = {} ≥ k = {k}", 4 * l)));
    }
    if k >= 2 * c * l {
        return Err(Failure::usage(format!("need k < 2cℓ, but k = {k} ≥ 2cℓ = {}", 2 * c * l)));
    }
    let report = certify_trace_bounds(k, l, c, star, trials, common.seed)?;
    #[derive(Serialize)]
    struct Out<'a> {
        config: String,
        report: &'a schur_embed::trace::SeminormReport,
    }
    let out = Out {
        config: format!(
            "schur-embed trace-check --k {k} --ell {l} --c {c}{} --trials {trials} --seed {}",
            if star { " --star" } else { "" },
            common.seed
        ),
        report: &report,
    };
    let text = serde_json::to_string_pretty(&out).expect("plain record") + "\n";
    emit(common.out.as_deref(), &text)?;
    if report.passed {
        Ok(())
    } else {
        let bad: Vec<&str> = report.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        Err(Failure::invalid(format!("inequalities violated: {}", bad.join(", "))))
    }
}

fn schur(input: &Path, common: &Common) -> Result<(), Failure> {
    let config = format!("schur-embed schur {} --seed {} --tol {:e}", display(input), common.seed, common.tol);
    let (g, b) = load(input)?;
    let blocks = BlockSystem::new(&g, &b, true)?;
    let notice = (blocks.n_interior() == 0).then_some("no interior vertices: S_Γ = L_Γ");
    let op = SchurOperator::new(blocks, solver(common)?)?;
    let m = op.n_boundary();
    let pairs = two_min_nontrivial_eigvecs(&op, &eigen(common))?;
    let xs = normalize(&Embedding::boundary(pairs.vectors.clone()))?;
    let planar = is_planar_boundary(&xs, CrossingMethod::Sweep)?;
    let equivalence = if m <= EQUIVALENCE_CAP {
        Some(estimate_spectral_equivalence(&op)?)
    } else {
        None
    };
    let out = json!({
        "config": config,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "boundary": m,
        "notice": notice,
        "lambda": pairs.values,
        "residuals": pairs.residuals,
        "eigenvalue_sum": pairs.sum(),
        "circle_energy": boundary_energy(&op, &circle_embedding(m)?)?,
        "equivalence": equivalence.map(|e| json!({ "c1": e.c1, "c2": e.c2, "product": e.product() })),
        "eigvec_planar": planar,
        "eigvec_convex": planar && is_convex_boundary(&xs),
    });
    emit(common.out.as_deref(), &(serde_json::to_string_pretty(&out).expect("plain record") + "\n"))
}

fn render(input: &Path, layout: &Path, svg: Option<&Path>) -> Result<(), Failure> {
    let file = read_graph(input)?;
    let coords = read_layout(layout)?;
    let g = &file.graph;
    let (x, boundary) = if coords.len() == g.vertex_count() {
        (Embedding::new(coords, Scope::Full), file.boundary.as_ref())
    } else if file.boundary.as_ref().is_some_and(|b| b.len() == coords.len()) {
        (Embedding::boundary(coords), None)
    } else {
        return Err(Failure::invalid(format!(
            "layout has {} rows; expected {} vertices or the boundary length",
            coords.len(),
            g.vertex_count()
        )));
    };
    let header = format!("schur-embed render {} --layout {}", display(input), display(layout));
    let text = format!("<!-- {header} -->\n{}", render_svg(g, &x, boundary)?);
    emit(svg, &text)
}


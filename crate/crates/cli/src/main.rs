//! `schur-embed` command line: boundary embeddings, the mesh experiment,
//! trace certification, Schur complement inspection and rendering.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schur_embed::mesh::Shape;

/// Exit status for a malformed command line; clap uses the same value.
const EXIT_USAGE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_NO_CONVERGENCE: u8 = 4;
const EXIT_IO: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "schur-embed", version, about = "Energy-minimizing convex boundary embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for eigensolver start blocks and sampling.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Relative residual target of the linear solves.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Embed a graph: optimized convex boundary plus Tutte interior.
    Embed {
        /// Graph file with a `boundary:` line.
        input: std::path::PathBuf,
        #[command(flatten)]
        common: Common,
        /// Also draw the embedding as SVG.
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
        /// Write the accepted steps as JSON lines.
        #[arg(long)]
        trace: Option<std::path::PathBuf>,
        /// Minimum energy decrease per accepted step; default scales with h(X_C).
        #[arg(long)]
        step_tol: Option<f64>,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
    },
    /// Laplacian vs Schur boundary embeddings on random Delaunay meshes.
    Experiment {
        /// disk or rect; a comma list runs each.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<Shape>,
        /// Point counts; a comma list runs a sweep.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        common: Common,
        /// Worker threads for the trials; all cores when absent.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check the trace inequalities on G_{k,ℓ} with random boundary data.
    TraceCheck {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
        /// Use the diagonal-augmented graph G*_{k,ℓ}.
        #[arg(long)]
        star: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Report the spectrum and equivalence constants of S_Γ.
    Schur {
        input: std::path::PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Draw a graph with a stored layout.
    Render {
        input: std::path::PathBuf,
        /// `vertex,x,y` rows for every vertex or for the boundary only.
        #[arg(long)]
        layout: std::path::PathBuf,
        /// SVG output; standard output when absent.
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
    },
}

/// A failure with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<schur_embed::Error> for Failure {
    fn from(e: schur_embed::Error) -> Self {
        use schur_embed::Error as E;
        let code = match e {
            E::Convergence { .. } => EXIT_NO_CONVERGENCE,
            E::Io(_) => EXIT_IO,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("i/o error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

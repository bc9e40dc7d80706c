//! Random Delaunay meshes and the boundary-embedding comparison experiment.

pub mod delaunay;
pub mod experiment;
pub mod sample;

pub use delaunay::{delaunay, extract_graph, MeshGraph, Triangulation};
pub use experiment::{
    aggregate, format_stats_csv, run_experiment, run_trial, ExperimentConfig, ExperimentResult, ExperimentStats,
    LayoutStats, TrialFailure, TrialRecord, STATS_HEADER,
};
pub use sample::{sample_points, sample_points_with, Shape};

//! Spring embeddings of planar graphs with energy-minimizing convex
//! boundaries.

pub mod blocks;
pub mod boundary_opt;
pub mod cycle;
pub mod eigen;
pub mod embedding;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod mesh;
pub mod schur;
pub mod solver;
pub mod sparse;
pub mod svg;
pub mod trace;

pub use error::{Error, Result};

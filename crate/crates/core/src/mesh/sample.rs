//! Uniform point samples in the experiment domains.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Sampling domain: the unit disk or the `[0,3]×[0,1]` rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Disk,
    Rectangle,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Disk => "disk",
            Shape::Rectangle => "rect",
        })
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disk" => Ok(Shape::Disk),
            "rect" | "rectangle" => Ok(Shape::Rectangle),
            _ => Err(Error::Input(format!("unknown shape {s:?}, expected disk or rect"))),
        }
    }
}

/// Draws `n` points from `rng`; the disk uses polar coordinates with a
/// `√r` radius.
pub fn sample_points_with(shape: Shape, n: usize, rng: &mut impl Rng) -> Result<Vec<[f64; 2]>> {
    if n < 3 {
        return Err(Error::Input(format!("need at least 3 points, got {n}")));
    }
    Ok((0..n)
        .map(|_| match shape {
            Shape::Disk => {
                let r = rng.random::<f64>().sqrt();
                let t = 2.0 * PI * rng.random::<f64>();
                [r * t.cos(), r * t.sin()]
            }
            Shape::Rectangle => [3.0 * rng.random::<f64>(), rng.random::<f64>()],
        })
        .collect())
}

/// `n` uniform points, deterministic per seed.
pub fn sample_points(shape: Shape, n: usize, seed: u64) -> Result<Vec<[f64; 2]>> {
    sample_points_with(shape, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

//! Convex-position tests and the make-convex projection for boundary
//! drawings.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::hull::convex_hull;
use crate::geometry::predicates::{orientation, Orientation, Point};

fn check_distinct(x: &[Point]) -> Result<()> {
    let mut sorted: Vec<usize> = (0..x.len()).collect();
    sorted.sort_by(|&a, &b| x[a][0].total_cmp(&x[b][0]).then(x[a][1].total_cmp(&x[b][1])));
    for w in sorted.windows(2) {
        if x[w[0]] == x[w[1]] {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::Input(format!("rows {} and {} coincide", a + 1, b + 1)));
        }
    }
    Ok(())
}

/// True iff the cyclic sequence `x` is in strictly convex position: every
/// consecutive turn has the same sign and the turning angles sum to ±2π.
pub fn is_convex_position(x: &[Point]) -> Result<bool> {
    let m = x.len();
    if m < 3 {
        return Err(Error::Input(format!("convexity needs at least 3 points, got {m}")));
    }
    check_distinct(x)?;
    let mut sign = None;
    let mut turning = 0.0;
    for i in 0..m {
        let (a, b, c) = (x[(i + m - 1) % m], x[i], x[(i + 1) % m]);
        let o = orientation(a, b, c);
        if o == Orientation::Collinear || sign.is_some_and(|s| s != o) {
            return Ok(false);
        }
        sign = Some(o);
        let u = [b[0] - a[0], b[1] - a[1]];
        let v = [c[0] - b[0], c[1] - b[1]];
        turning += (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1]);
    }
    Ok((turning.abs() - 2.0 * PI).abs() < 1e-6)
}

/// Fraction of rows that are not corners of the strict convex hull.
pub fn fraction_not_on_hull(x: &[Point]) -> Result<f64> {
    let hull = convex_hull(x)?;
    Ok((x.len() - hull.len()) as f64 / x.len() as f64)
}

/// Replaces a boundary drawing by its convex hull: hull corners stay put and
/// each run of `r` other rows between two consecutive corners (in cycle
/// order) is spread at fractions `1/(r+1), ..., r/(r+1)` along the hull edge
/// joining them.
///
/// The cycle must visit the hull corners in hull order, in either direction;
/// otherwise the result would not be a drawing of the same cycle and an
/// ordering error is returned.
pub fn make_convex(x: &[Point]) -> Result<Vec<Point>> {
    let m = x.len();
    let hull = convex_hull(x)?;
    let h = hull.len();

    // hull corners sorted by cycle position must be a rotation of the hull
    // order or of its reverse
    let mut by_cycle = hull.clone();
    by_cycle.sort_unstable();
    let start = hull.iter().position(|&v| v == by_cycle[0]).unwrap();
    let forward = (0..h).all(|t| hull[(start + t) % h] == by_cycle[t]);
    let backward = (0..h).all(|t| hull[(start + h - t) % h] == by_cycle[t]);
    if !forward && !backward {
        return Err(Error::Ordering(
            "the cycle visits the hull corners out of hull order".into(),
        ));
    }

    let mut out = x.to_vec();
    for t in 0..h {
        let p = by_cycle[t];
        let q = by_cycle[(t + 1) % h];
        let r = (q + m - p - 1) % m;
        let (a, b) = (x[p], x[q]);
        for s in 1..=r {
            let f = s as f64 / (r + 1) as f64;
            out[(p + s) % m] = [(1.0 - f) * a[0] + f * b[0], (1.0 - f) * a[1] + f * b[1]];
        }
    }
    Ok(out)
}

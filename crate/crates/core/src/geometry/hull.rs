//! Strict convex hull by Andrew's monotone chain.

use crate::error::{Error, Result};
use crate::geometry::predicates::{orientation, Orientation, Point};

/// Indices of the strict convex hull of `points` in counterclockwise order,
/// starting from the lexicographically smallest point. Points on a hull edge
/// but not at a corner are excluded; among coincident points the lowest
/// index represents the location.
pub fn convex_hull(points: &[Point]) -> Result<Vec<usize>> {
    if points.len() < 3 {
        return Err(Error::Input(format!("hull needs at least 3 points, got {}", points.len())));
    }
    if points.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::Input("hull points must be finite".into()));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p[0].total_cmp(&q[0])
            .then(p[1].total_cmp(&q[1]))
            .then(a.cmp(&b))
    });
    order.dedup_by(|b, a| points[*a] == points[*b]);
    if order.len() < 3 {
        return Err(Error::Degenerate("fewer than 3 distinct points".into()));
    }

    let turn_left = |a: usize, b: usize, c: usize| {
        orientation(points[a], points[b], points[c]) == Orientation::CounterClockwise
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for &i in &order {
        while hull.len() >= 2 && !turn_left(hull[hull.len() - 2], hull[hull.len() - 1], i) {
            hull.pop();
        }
        hull.push(i);
    }
    let lower = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower && !turn_left(hull[hull.len() - 2], hull[hull.len() - 1], i) {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    if hull.len() < 3 {
        return Err(Error::Degenerate("all points are collinear".into()));
    }
    Ok(hull)
}

/// Hull corners by testing every ordered pair as a candidate hull edge:
/// `(i, j)` is one when every other point lies strictly left of it or on the
/// closed segment. Cubic; meant as a cross-check for [`convex_hull`].
pub fn brute_force_extreme_points(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    let distinct: Vec<usize> = (0..n)
        .filter(|&i| (0..i).all(|j| points[j] != points[i]))
        .collect();
    let mut corner = vec![false; n];
    for &i in &distinct {
        for &j in &distinct {
            if i == j || (corner[i] && corner[j]) {
                continue;
            }
            let (a, b) = (points[i], points[j]);
            let edge = distinct.iter().all(|&k| {
                k == i
                    || k == j
                    || match orientation(a, b, points[k]) {
                        Orientation::CounterClockwise => true,
                        Orientation::Clockwise => false,
                        Orientation::Collinear => on_segment(a, b, points[k]),
                    }
            });
            if edge {
                corner[i] = true;
                corner[j] = true;
            }
        }
    }
    (0..n).filter(|&i| corner[i]).collect()
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

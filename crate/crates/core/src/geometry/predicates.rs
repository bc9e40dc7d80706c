//! Orientation and segment-intersection predicates.
//!
//! Signs below `ORIENT_EPS` times the magnitude of the products involved are
//! treated as zero.

pub type Point = [f64; 2];

/// Relative threshold below which an orientation determinant counts as zero.
pub const ORIENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Twice the signed area of `abc` (positive for counter-clockwise).
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    let l = (b[0] - a[0]) * (c[1] - a[1]);
    let r = (b[1] - a[1]) * (c[0] - a[0]);
    let det = l - r;
    if det.abs() <= ORIENT_EPS * (l.abs() + r.abs()) {
        Orientation::Collinear
    } else if det > 0.0 {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

fn sign(o: Orientation) -> i8 {
    match o {
        Orientation::CounterClockwise => 1,
        Orientation::Clockwise => -1,
        Orientation::Collinear => 0,
    }
}

/// `c` lies within the bounding box of `ab` (used after a collinearity test).
fn within_box(a: Point, b: Point, c: Point) -> bool {
    c[0] >= a[0].min(b[0]) && c[0] <= a[0].max(b[0]) && c[1] >= a[1].min(b[1]) && c[1] <= a[1].max(b[1])
}

/// Closed segments `p1p2` and `q1q2` share at least one point.
pub fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = sign(orientation(p1, p2, q1));
    let d2 = sign(orientation(p1, p2, q2));
    let d3 = sign(orientation(q1, q2, p1));
    let d4 = sign(orientation(q1, q2, p2));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && within_box(p1, p2, q1))
        || (d2 == 0 && within_box(p1, p2, q2))
        || (d3 == 0 && within_box(q1, q2, p1))
        || (d4 == 0 && within_box(q1, q2, p2))
}

/// The segments cross at a single interior point of both.
pub fn segments_cross_properly(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = sign(orientation(p1, p2, q1));
    let d2 = sign(orientation(p1, p2, q2));
    let d3 = sign(orientation(q1, q2, p1));
    let d4 = sign(orientation(q1, q2, p2));
    d1 * d2 < 0 && d3 * d4 < 0
}

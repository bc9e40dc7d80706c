//! Planar geometry for boundary drawings: predicates, crossing counts,
//! hulls and convex position.

pub mod convex;
pub mod crossings;
pub mod hull;
pub mod predicates;

pub use convex::{fraction_not_on_hull, is_convex_position, make_convex};
pub use crossings::{count_crossings, polygon_crossings, polygon_edges, CrossingMethod, CrossingReport};
pub use hull::convex_hull;
pub use predicates::{orientation, segments_intersect, Orientation, Point};

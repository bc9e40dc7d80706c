//! Edge-crossing counts for straight-line drawings.
//!
//! Two edges cross when they share no endpoint index and their closed
//! segments meet. Collinear overlaps and T-junctions count; edges that share
//! an endpoint never do. Both methods decide each candidate pair with the
//! same predicate, so they differ only in which pairs they look at.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::geometry::predicates::{segments_cross_properly, segments_intersect, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossingMethod {
    /// Test every pair.
    #[default]
    BruteForce,
    /// Bentley–Ottmann sweep line.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingReport {
    pub planar: bool,
    pub crossings: usize,
    pub crossings_per_edge: f64,
}

impl CrossingReport {
    fn new(crossings: usize, edges: usize) -> Self {
        Self {
            planar: crossings == 0,
            crossings,
            crossings_per_edge: if edges == 0 { 0.0 } else { crossings as f64 / edges as f64 },
        }
    }
}

/// Counts crossing pairs among `edges` drawn at `coords`.
pub fn count_crossings(
    edges: &[(usize, usize)],
    coords: &[[f64; 2]],
    method: CrossingMethod,
) -> Result<CrossingReport> {
    for &(u, v) in edges {
        if u >= coords.len() || v >= coords.len() {
            return Err(Error::Input(format!(
                "edge ({}, {}) refers past the {} coordinates",
                u + 1,
                v + 1,
                coords.len()
            )));
        }
    }
    if coords.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::Input("coordinates must be finite".into()));
    }
    let segments: Vec<[Point; 2]> = edges.iter().map(|&(u, v)| [coords[u], coords[v]]).collect();
    let adjacent = |i: usize, j: usize| {
        let (a, b) = (edges[i], edges[j]);
        a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
    };
    let pairs = match method {
        CrossingMethod::BruteForce => brute_force_pairs(&segments),
        CrossingMethod::Sweep => sweep_pairs(&segments),
    };
    let crossings = pairs.iter().filter(|&&(i, j)| !adjacent(i, j)).count();
    Ok(CrossingReport::new(crossings, edges.len()))
}

/// Edges of the closed polygon through `0, 1, ..., m−1`.
pub fn polygon_edges(m: usize) -> Vec<(usize, usize)> {
    match m {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..m).map(|i| (i, (i + 1) % m)).collect(),
    }
}

/// Crossings of the closed polygon drawn by the rows of `coords`.
pub fn polygon_crossings(coords: &[[f64; 2]], method: CrossingMethod) -> Result<CrossingReport> {
    count_crossings(&polygon_edges(coords.len()), coords, method)
}

/// All intersecting pairs `(i, j)`, `i < j`, by exhaustive testing.
pub fn brute_force_pairs(segments: &[[Point; 2]]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..segments.len() {
        let [p1, p2] = segments[i];
        for (j, s) in segments.iter().enumerate().skip(i + 1) {
            if segments_intersect(p1, p2, s[0], s[1]) {
                out.push((i, j));
            }
        }
    }
    out
}

fn lex(a: Point, b: Point) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

/// Event key ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, Copy)]
struct Key(Point);

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        lex(self.0, other.0) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        lex(self.0, other.0)
    }
}

#[derive(Debug, Default)]
struct Event {
    starts: Vec<usize>,
    ends: Vec<usize>,
    through: Vec<usize>,
}

struct Sweep<'a> {
    /// Left-to-right oriented copies of the input.
    seg: Vec<[Point; 2]>,
    input: &'a [[Point; 2]],
    events: BTreeMap<Key, Event>,
    /// Active segments, bottom to top just right of the current event.
    status: Vec<usize>,
    found: HashSet<(usize, usize)>,
    /// Segments that ended recently, kept so that a segment starting a
    /// rounding error away still gets compared with them.
    recent: Vec<usize>,
    tol: f64,
}

impl<'a> Sweep<'a> {
    fn y_at(&self, s: usize, p: Point) -> f64 {
        let [a, b] = self.seg[s];
        if a[0] == b[0] {
            return p[1].clamp(a[1], b[1]);
        }
        let t = ((p[0] - a[0]) / (b[0] - a[0])).clamp(0.0, 1.0);
        let y = a[1] + t * (b[1] - a[1]);
        y.clamp(a[1].min(b[1]), a[1].max(b[1]))
    }

    fn slope(&self, s: usize) -> f64 {
        let [a, b] = self.seg[s];
        if a[0] == b[0] {
            f64::INFINITY
        } else {
            (b[1] - a[1]) / (b[0] - a[0])
        }
    }

    fn record(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let [a, b] = self.input[i];
        let [c, d] = self.input[j];
        if segments_intersect(a, b, c, d) {
            self.found.insert((i.min(j), i.max(j)));
        }
    }

    /// Tests a new neighbor pair and schedules their crossing if it lies
    /// ahead of the sweep.
    fn neighbors(&mut self, i: usize, j: usize, p: Point) {
        self.record(i, j);
        let [a, b] = self.seg[i];
        let [c, d] = self.seg[j];
        if !segments_cross_properly(a, b, c, d) {
            return;
        }
        let q = self.crossing_point(i, j);
        if lex(q, p) == Ordering::Greater {
            let e = self.events.entry(Key(q)).or_default();
            e.through.push(i);
            e.through.push(j);
        }
    }

    fn crossing_point(&self, i: usize, j: usize) -> Point {
        let [a, b] = self.seg[i];
        let [c, d] = self.seg[j];
        let q = if a[0] == b[0] {
            [a[0], self.y_at(j, a)]
        } else if c[0] == d[0] {
            [c[0], self.y_at(i, c)]
        } else {
            let r = [b[0] - a[0], b[1] - a[1]];
            let s = [d[0] - c[0], d[1] - c[1]];
            let den = r[0] * s[1] - r[1] * s[0];
            let t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / den;
            [a[0] + t * r[0], a[1] + t * r[1]]
        };
        let lo_x = a[0].max(c[0]);
        let hi_x = b[0].min(d[0]);
        [q[0].clamp(lo_x.min(hi_x), hi_x.max(lo_x)) + 0.0, q[1] + 0.0]
    }

    fn run(&mut self) {
        while let Some((Key(p), ev)) = self.events.pop_first() {
            self.handle(p, ev);
        }
    }

    fn handle(&mut self, p: Point, ev: Event) {
        // segments in the status passing within tol of p
        let lo = self.status.partition_point(|&s| self.y_at(s, p) < p[1] - self.tol);
        let mut hi = lo;
        while hi < self.status.len() && self.y_at(self.status[hi], p) <= p[1] + self.tol {
            hi += 1;
        }
        let mut touched: Vec<usize> = self.status[lo..hi].to_vec();
        let mut stray: Vec<usize> = Vec::new();
        for &s in ev.ends.iter().chain(&ev.through) {
            if !touched.contains(&s) && !stray.contains(&s) && self.status.contains(&s) {
                stray.push(s);
            }
        }
        let mut lo = lo;
        if stray.is_empty() {
            self.status.drain(lo..hi);
        } else {
            touched.extend(&stray);
            let drop: HashSet<usize> = touched.iter().copied().collect();
            let before = self.status[..lo].iter().filter(|s| !drop.contains(s)).count();
            self.status.retain(|s| !drop.contains(s));
            lo = before;
        }

        // every segment through p meets every other one there
        let mut here = touched.clone();
        here.extend(&ev.starts);
        for a in 0..here.len() {
            for b in (a + 1)..here.len() {
                self.record(here[a], here[b]);
            }
        }
        let reach = self.tol;
        self.recent
            .retain(|&s| self.seg[s][1][0] + reach >= p[0]);
        for &s in &ev.starts {
            for r in 0..self.recent.len() {
                let t = self.recent[r];
                self.record(s, t);
            }
        }
        self.recent.extend(&ev.ends);

        let mut insert: Vec<usize> = touched
            .into_iter()
            .filter(|s| !ev.ends.contains(s))
            .chain(ev.starts.iter().copied())
            .collect();
        insert.sort_by(|&a, &b| self.slope(a).total_cmp(&self.slope(b)).then(a.cmp(&b)));
        insert.dedup();

        if insert.is_empty() {
            if lo > 0 && lo < self.status.len() {
                let (a, b) = (self.status[lo - 1], self.status[lo]);
                self.neighbors(a, b, p);
            }
            return;
        }
        let k = insert.len();
        self.status.splice(lo..lo, insert);
        if lo > 0 {
            let (a, b) = (self.status[lo - 1], self.status[lo]);
            self.neighbors(a, b, p);
        }
        if lo + k < self.status.len() {
            let (a, b) = (self.status[lo + k - 1], self.status[lo + k]);
            self.neighbors(a, b, p);
        }
    }
}

/// All intersecting pairs `(i, j)`, `i < j`, by a Bentley–Ottmann sweep.
///
/// Status positions are found with a small tolerance around each event so
/// that rounding in computed crossing points cannot hide a segment that
/// passes through it; extra candidates are harmless because every pair is
/// re-decided by the exact-sign predicate.
pub fn sweep_pairs(segments: &[[Point; 2]]) -> Vec<(usize, usize)> {
    let mut extent = 0.0f64;
    for s in segments {
        for p in s {
            extent = extent.max(p[0].abs()).max(p[1].abs());
        }
    }
    let mut sweep = Sweep {
        seg: Vec::with_capacity(segments.len()),
        input: segments,
        events: BTreeMap::new(),
        status: Vec::new(),
        found: HashSet::new(),
        recent: Vec::new(),
        tol: 1e-10 * extent.max(1e-300),
    };
    let mut points = Vec::new();
    for (i, s) in segments.iter().enumerate() {
        let (a, b) = match lex(s[0], s[1]) {
            Ordering::Greater => (s[1], s[0]),
            _ => (s[0], s[1]),
        };
        let (a, b) = ([a[0] + 0.0, a[1] + 0.0], [b[0] + 0.0, b[1] + 0.0]);
        sweep.seg.push([a, b]);
        if lex(a, b) == Ordering::Equal {
            points.push(i);
            continue;
        }
        sweep.events.entry(Key(a)).or_default().starts.push(i);
        sweep.events.entry(Key(b)).or_default().ends.push(i);
    }
    sweep.run();
    // zero-length segments against everything
    for &i in &points {
        for j in 0..segments.len() {
            sweep.record(i, j);
        }
    }
    let mut out: Vec<(usize, usize)> = sweep.found.into_iter().collect();
    out.sort_unstable();
    out
}

//! Incremental Bowyer–Watson Delaunay triangulation.
//!
//! Hull edges are closed off by ghost triangles sharing a vertex at
//! infinity, so the convex hull comes out exactly and no super-triangle has
//! to be removed afterwards. Orientation and in-circle tests use adaptive
//! exact arithmetic. Cocircular quadruples are resolved afterwards by
//! flipping to the diagonal whose sorted endpoint pair is smallest.

use std::collections::HashMap;

use robust::{incircle, orient2d, Coord};

use crate::error::{Error, Result};
use crate::graph::{BoundaryFace, Graph};

const GHOST: usize = usize::MAX;
const NONE: usize = usize::MAX;

/// A triangulation of a point set with its convex hull.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    pub points: Vec<[f64; 2]>,
    /// Counter-clockwise index triples.
    pub triangles: Vec<[usize; 3]>,
    /// Hull cycle, counter-clockwise, starting at its smallest index.
    pub hull: Vec<usize>,
}

impl Triangulation {
    /// Sorted, deduplicated undirected edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]))))
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }
}

fn c(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

fn orient(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    orient2d(c(p), c(q), c(r))
}

#[derive(Debug, Clone)]
struct Tri {
    v: [usize; 3],
    /// `nbr[k]` lies across the edge `(v[k+1], v[k+2])`.
    nbr: [usize; 3],
    alive: bool,
}

struct Builder<'a> {
    pts: &'a [[f64; 2]],
    tris: Vec<Tri>,
    last: usize,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a> Builder<'a> {
    fn is_ghost(&self, t: usize) -> bool {
        self.tris[t].v[2] == GHOST
    }

    fn conflicts(&self, t: usize, p: usize) -> bool {
        let [a, b, cc] = self.tris[t].v;
        let pp = self.pts[p];
        if cc == GHOST {
            // ghost edge a→b has the hull interior on its right
            let o = orient(self.pts[a], self.pts[b], pp);
            if o > 0.0 {
                return true;
            }
            if o < 0.0 {
                return false;
            }
            let (pa, pb) = (self.pts[a], self.pts[b]);
            let d = (pb[0] - pa[0]) * (pp[0] - pa[0]) + (pb[1] - pa[1]) * (pp[1] - pa[1]);
            let len = (pb[0] - pa[0]).powi(2) + (pb[1] - pa[1]).powi(2);
            return d > 0.0 && d < len;
        }
        incircle(c(self.pts[a]), c(self.pts[b]), c(self.pts[cc]), c(pp)) > 0.0
    }

    fn locate(&self, p: usize) -> usize {
        let pp = self.pts[p];
        let mut t = self.last;
        let cap = 4 * self.tris.len() + 16;
        let mut turn = 0usize;
        for _ in 0..cap {
            if self.is_ghost(t) {
                if self.conflicts(t, p) {
                    return t;
                }
                t = self.tris[t].nbr[2];
                continue;
            }
            let v = self.tris[t].v;
            let mut moved = false;
            turn = turn.wrapping_add(1);
            for s in 0..3 {
                let e = (s + turn) % 3;
                let (a, b) = (v[(e + 1) % 3], v[(e + 2) % 3]);
                if orient(self.pts[a], self.pts[b], pp) < 0.0 {
                    t = self.tris[t].nbr[e];
                    moved = true;
                    break;
                }
            }
            if !moved {
                return t;
            }
        }
        // the walk should always terminate; fall back to a scan regardless
        (0..self.tris.len())
            .find(|&t| self.tris[t].alive && self.conflicts(t, p))
            .expect("every new point conflicts with some triangle")
    }

    fn push(&mut self, v: [usize; 3]) -> usize {
        self.tris.push(Tri {
            v,
            nbr: [NONE; 3],
            alive: true,
        });
        self.stamp.push(0);
        self.tris.len() - 1
    }

    /// Links unset neighbor slots of `new` triangles to each other.
    fn link(&mut self, new: &[usize]) {
        let mut open: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for &t in new {
            for k in 0..3 {
                if self.tris[t].nbr[k] == NONE {
                    let v = self.tris[t].v;
                    open.insert((v[(k + 1) % 3], v[(k + 2) % 3]), (t, k));
                }
            }
        }
        for (&(a, b), &(t, k)) in &open {
            if let Some(&(u, _)) = open.get(&(b, a)) {
                self.tris[t].nbr[k] = u;
            }
        }
    }

    fn start(&mut self, a: usize, b: usize, cc: usize) {
        let (b, cc) = if orient(self.pts[a], self.pts[b], self.pts[cc]) > 0.0 {
            (b, cc)
        } else {
            (cc, b)
        };
        let t0 = self.push([a, b, cc]);
        let mut new = vec![t0];
        for &(x, y) in &[(a, b), (b, cc), (cc, a)] {
            new.push(self.push([y, x, GHOST]));
        }
        self.link(&new);
        self.last = t0;
    }

    fn insert(&mut self, p: usize) {
        let seed = self.locate(p);
        self.epoch += 1;
        let epoch = self.epoch;
        let mut cavity = vec![seed];
        self.stamp[seed] = epoch;
        let mut i = 0;
        while i < cavity.len() {
            let t = cavity[i];
            i += 1;
            for k in 0..3 {
                let u = self.tris[t].nbr[k];
                if self.stamp[u] != epoch && self.conflicts(u, p) {
                    self.stamp[u] = epoch;
                    cavity.push(u);
                }
            }
        }

        let mut new = Vec::new();
        for &t in &cavity {
            for k in 0..3 {
                let out = self.tris[t].nbr[k];
                if self.stamp[out] == epoch {
                    continue;
                }
                let v = self.tris[t].v;
                let (a, b) = (v[(k + 1) % 3], v[(k + 2) % 3]);
                let (w, slot) = if a == GHOST {
                    ([b, p, GHOST], 1)
                } else if b == GHOST {
                    ([p, a, GHOST], 0)
                } else {
                    ([a, b, p], 2)
                };
                let nt = self.push(w);
                self.tris[nt].nbr[slot] = out;
                let back = self.tris[out].nbr.iter().position(|&x| x == t).expect("adjacency is symmetric");
                self.tris[out].nbr[back] = nt;
                new.push(nt);
            }
        }
        for &t in &cavity {
            self.tris[t].alive = false;
        }
        self.link(&new);
        self.last = *new.iter().find(|&&t| !self.is_ghost(t)).unwrap_or(&new[0]);
    }
}

/// Insertion order that keeps consecutive points close: a snake through a
/// coarse grid.
fn locality_order(pts: &[[f64; 2]]) -> Vec<usize> {
    let n = pts.len();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    let side = ((n as f64 / 4.0).sqrt().ceil() as usize).max(1);
    let cell = |p: &[f64; 2], d: usize| {
        let w = hi[d] - lo[d];
        if w > 0.0 {
            (((p[d] - lo[d]) / w * side as f64) as usize).min(side - 1)
        } else {
            0
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        let (cx, cy) = (cell(&pts[i], 0), cell(&pts[i], 1));
        let cx = if cy % 2 == 0 { cx } else { side - 1 - cx };
        (cy, cx, i)
    });
    order
}

/// Delaunay triangulation of `points`.
///
/// Errors on fewer than three points, non-finite or duplicate points, and
/// (degenerate) when all points are collinear.
pub fn delaunay(points: &[[f64; 2]]) -> Result<Triangulation> {
    let n = points.len();
    if n < 3 {
        return Err(Error::Input(format!("triangulation needs at least 3 points, got {n}")));
    }
    if points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(Error::Input("points must be finite".into()));
    }
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    for w in sorted.windows(2) {
        if points[w[0]] == points[w[1]] {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::Input(format!("points {} and {} coincide", a + 1, b + 1)));
        }
    }

    let order = locality_order(points);
    let (a, b) = (order[0], order[1]);
    let third = order[2..]
        .iter()
        .position(|&q| orient(points[a], points[b], points[q]) != 0.0)
        .ok_or_else(|| Error::Degenerate("all points are collinear".into()))?
        + 2;
    let mut bld = Builder {
        pts: points,
        tris: Vec::with_capacity(8 * n),
        last: 0,
        stamp: Vec::with_capacity(8 * n),
        epoch: 0,
    };
    bld.start(a, b, order[third]);
    for (pos, &p) in order.iter().enumerate() {
        if pos >= 2 && pos != third {
            bld.insert(p);
        }
    }

    let mut triangles = Vec::new();
    let mut next = vec![NONE; n];
    for t in bld.tris.iter().filter(|t| t.alive) {
        if t.v[2] == GHOST {
            next[t.v[1]] = t.v[0];
        } else {
            triangles.push(t.v);
        }
    }
    let start = (0..n).find(|&v| next[v] != NONE).expect("hull is non-empty");
    let mut hull = vec![start];
    let mut v = next[start];
    while v != start {
        hull.push(v);
        v = next[v];
    }

    resolve_cocircular(points, &mut triangles);
    Ok(Triangulation {
        points: points.to_vec(),
        triangles,
        hull,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Flips every cocircular interior edge to the diagonal with the smaller
/// sorted endpoint pair. Each flip lowers the sorted diagonal list, so the
/// loop terminates.
fn resolve_cocircular(pts: &[[f64; 2]], tris: &mut [[usize; 3]]) {
    loop {
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, t) in tris.iter().enumerate() {
            for k in 0..3 {
                by_edge.entry(key(t[k], t[(k + 1) % 3])).or_default().push(i);
            }
        }
        let mut edges: Vec<_> = by_edge.into_iter().filter(|(_, ts)| ts.len() == 2).collect();
        edges.sort_unstable();
        let mut flipped = false;
        for ((a, b), ts) in edges {
            let (t1, t2) = (ts[0], ts[1]);
            let opp = |t: [usize; 3]| t.into_iter().find(|&v| v != a && v != b).unwrap();
            let (x, y) = (opp(tris[t1]), opp(tris[t2]));
            if key(x, y) >= (a, b) {
                continue;
            }
            // orient the quad as a→b with x on the left
            let (x, y) = if orient(pts[a], pts[b], pts[x]) > 0.0 { (x, y) } else { (y, x) };
            if incircle(c(pts[a]), c(pts[b]), c(pts[x]), c(pts[y])) != 0.0 {
                continue;
            }
            if orient(pts[a], pts[y], pts[x]) <= 0.0 || orient(pts[y], pts[b], pts[x]) <= 0.0 {
                continue;
            }
            tris[t1] = [a, y, x];
            tris[t2] = [y, b, x];
            flipped = true;
            break;
        }
        if !flipped {
            return;
        }
    }
}

/// The experiment graph of a triangulation.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshGraph {
    pub graph: Graph,
    pub boundary: BoundaryFace,
    /// An edge joins two hull vertices that are not consecutive on the hull,
    /// so the boundary is not an induced cycle.
    pub hull_chord: bool,
}

/// Edge graph of `t` with the hull cycle as boundary.
pub fn extract_graph(t: &Triangulation) -> Result<MeshGraph> {
    let n = t.points.len();
    let graph = Graph::from_edges(n, t.edges())?;
    let boundary = BoundaryFace::new(t.hull.clone(), n)?;
    let h = t.hull.len();
    let mut pos = vec![NONE; n];
    for (i, &v) in t.hull.iter().enumerate() {
        pos[v] = i;
    }
    let hull_chord = graph.edges().iter().any(|&(u, v)| {
        pos[u] != NONE && pos[v] != NONE && {
            let d = pos[u].abs_diff(pos[v]);
            d != 1 && d != h - 1
        }
    });
    Ok(MeshGraph {
        graph,
        boundary,
        hull_chord,
    })
}

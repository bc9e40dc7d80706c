//! Fixtures and independent oracles shared by the integration tests.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use schur_embed::graph::{build_gkl, BoundaryFace, Graph};
use schur_embed::trace::AggregationPartition;

/// Random connected graph: a random spanning tree plus `extra` random edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            edges.push((a, b));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random connected graph whose first `m` vertices form an induced cycle:
/// every other edge has at least one endpoint among the `n − m` interior
/// vertices.
pub fn random_cycle_boundary_graph(rng: &mut impl Rng, m: usize, n: usize, extra: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    for v in m..n {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let a = rng.random_range(m..n);
        let b = rng.random_range(0..n);
        if a != b {
            edges.push((a, b));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Laplacian assembled edge by edge.
pub fn laplacian_from_edges(n: usize, edges: &[(usize, usize)]) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in edges {
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
    }
    l
}

/// `Σ_edges (u_a − u_b)²`
pub fn edge_energy(edges: &[(usize, usize)], u: &[f64]) -> f64 {
    edges.iter().map(|&(a, b)| (u[a] - u[b]).powi(2)).sum()
}

/// Minimum of `Σ_edges (v_a − v_b)²` over `v` with `v = phi` on `boundary`,
/// by an LU solve of the interior rows of the edge-built Laplacian.
pub fn min_extension_energy(n: usize, edges: &[(usize, usize)], boundary: &[usize], phi: &[f64]) -> f64 {
    let l = laplacian_from_edges(n, edges);
    let mut fixed = vec![None; n];
    for (&v, &x) in boundary.iter().zip(phi) {
        fixed[v] = Some(x);
    }
    let free: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let mut v = vec![0.0; n];
    for (i, f) in fixed.iter().enumerate() {
        if let Some(x) = f {
            v[i] = *x;
        }
    }
    if !free.is_empty() {
        let a = DMatrix::from_fn(free.len(), free.len(), |r, c| l[(free[r], free[c])]);
        let b = DVector::from_fn(free.len(), |r, _| {
            -boundary.iter().zip(phi).map(|(&bv, &x)| l[(free[r], bv)] * x).sum::<f64>()
        });
        let sol = a.lu().solve(&b).expect("interior block is nonsingular");
        for (k, &f) in free.iter().enumerate() {
            v[f] = sol[k];
        }
    }
    edge_energy(edges, &v)
}

pub fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

pub fn on_segment(p: [i64; 2], a: [i64; 2], b: [i64; 2]) -> bool {
    cross(a, b, p) == 0
        && p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

/// Closed-segment intersection in exact integer arithmetic.
pub fn meet(s: [[i64; 2]; 2], t: [[i64; 2]; 2]) -> bool {
    let (d1, d2) = (cross(t[0], t[1], s[0]).signum(), cross(t[0], t[1], s[1]).signum());
    let (d3, d4) = (cross(s[0], s[1], t[0]).signum(), cross(s[0], s[1], t[1]).signum());
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(s[0], t[0], t[1]) || on_segment(s[1], t[0], t[1]) || on_segment(t[0], s[0], s[1]) || on_segment(t[1], s[0], s[1])
}

pub fn oracle_pairs(segs: &[[[i64; 2]; 2]]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            if meet(segs[i], segs[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Strict hull corners: points outside the closed hull of all the others.
/// A point is not a corner iff it lies in a closed triangle of three others
/// or on a closed segment of two others.
pub fn oracle_corners(p: &[[i64; 2]]) -> Vec<usize> {
    let n = p.len();
    let mut out = Vec::new();
    'outer: for i in 0..n {
        if (0..i).any(|j| p[j] == p[i]) {
            continue;
        }
        let others: Vec<usize> = (0..n).filter(|&j| j != i && p[j] != p[i]).collect();
        for (x, &a) in others.iter().enumerate() {
            for (y, &b) in others.iter().enumerate().skip(x + 1) {
                if on_segment(p[i], p[a], p[b]) {
                    continue 'outer;
                }
                for &c in others.iter().skip(y + 1) {
                    let (s1, s2, s3) = (cross(p[a], p[b], p[i]), cross(p[b], p[c], p[i]), cross(p[c], p[a], p[i]));
                    if cross(p[a], p[b], p[c]) != 0
                        && ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0))
                    {
                        continue 'outer;
                    }
                }
            }
        }
        out.push(i);
    }
    out
}

/// Vertex ids of the 4-aggregation fixture onto `G_{6,2}`.
pub struct Fig4 {
    pub b: fn(usize) -> usize,
    pub p: fn(usize) -> usize,
    pub s: fn(usize) -> usize,
    pub q: fn(usize) -> usize,
    pub z: usize,
}

pub const FIG4: Fig4 = Fig4 {
    b: |t| t % 12,
    p: |i| 12 + i % 6,
    s: |i| 18 + i % 6,
    q: |i| 24 + i % 6,
    z: 30,
};

/// Edges of the fixture graph: a 12-cycle boundary, six sectors of
/// `{b_2i, b_2i+1, p_i, s_i}` over a ring `q_i`, and a hub `z` joined to
/// every `q_i`.
pub fn fig4_edges() -> Vec<(usize, usize)> {
    let f = &FIG4;
    let mut e = Vec::new();
    for t in 0..12 {
        e.push(((f.b)(t), (f.b)(t + 1)));
    }
    for i in 0..6 {
        let (b0, b1, p, s, q) = ((f.b)(2 * i), (f.b)(2 * i + 1), (f.p)(i), (f.s)(i), (f.q)(i));
        e.extend([(b0, p), (b1, p), (p, s), (b1, s), (s, q), (p, q), (s, (f.q)(i + 1)), (q, (f.q)(i + 1)), (f.z, q)]);
    }
    e
}

/// `G_{6,2}` plus the diagonals `(i,1)-(i+1,2)`.
pub fn fig4_host() -> Graph {
    let (g, _) = build_gkl(6, 2, false).unwrap();
    let mut e = g.edges().to_vec();
    for i in 0..6 {
        e.push((i, 6 + (i + 1) % 6));
    }
    Graph::from_edges(12, e).unwrap()
}

pub fn fig4_partition() -> AggregationPartition {
    let f = &FIG4;
    let mut aggregates = vec![Vec::new(); 12];
    for i in 0..6 {
        aggregates[i] = vec![(f.b)(2 * i), (f.b)(2 * i + 1), (f.p)(i), (f.s)(i)];
        aggregates[6 + i] = vec![(f.q)(i)];
    }
    AggregationPartition {
        k: 6,
        l: 2,
        aggregates,
        star: vec![f.z],
        host: fig4_host(),
    }
}

/// The valid 4-aggregation fixture.
pub fn fig4() -> (Graph, BoundaryFace, AggregationPartition) {
    let g = Graph::from_edges(31, fig4_edges()).unwrap();
    let gamma = BoundaryFace::new((0..12).collect(), 31).unwrap();
    (g, gamma, fig4_partition())
}

/// One fixture per definition condition, each breaking only that condition.
pub fn fig4_negatives() -> Vec<(u8, Graph, BoundaryFace, AggregationPartition)> {
    let f = &FIG4;
    let mut out = Vec::new();

    // (1) a_{1,1} falls apart into {b0, b1} and {p0, s0}
    let cut = [((f.b)(0), (f.p)(0)), ((f.b)(1), (f.p)(0)), ((f.b)(1), (f.s)(0))];
    let e: Vec<_> = fig4_edges().into_iter().filter(|x| !cut.contains(x)).collect();
    let (_, gamma, part) = fig4();
    out.push((1, Graph::from_edges(31, e).unwrap(), gamma, part));

    // (2) an extra boundary vertex between b11 and b0 joins a_{1,2}
    let extra = 31;
    let mut e = fig4_edges();
    e.extend([((f.b)(11), extra), (extra, (f.b)(0)), (extra, (f.q)(0))]);
    let gamma = BoundaryFace::new((0..12).chain([extra]).collect(), 32).unwrap();
    let mut part = fig4_partition();
    part.aggregates[6].push(extra);
    out.push((2, Graph::from_edges(32, e).unwrap(), gamma, part));

    // (3) the hub reaches into the first layer
    let mut e = fig4_edges();
    e.push((f.z, (f.s)(0)));
    let (_, gamma, part) = fig4();
    out.push((3, Graph::from_edges(31, e).unwrap(), gamma, part));

    // (4) an edge realizes the diagonal (1,1)-(6,2), which H lacks
    let mut e = fig4_edges();
    e.push(((f.p)(0), (f.q)(5)));
    let (_, gamma, part) = fig4();
    out.push((4, Graph::from_edges(31, e).unwrap(), gamma, part));

    out
}

//! Simple undirected graphs with a designated boundary face.
//!
//! Vertices are 0-based everywhere inside the library; the text formats in
//! [`crate::io`] are 1-based and convert at the boundary.

use std::collections::VecDeque;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Marker for vertices that BFS could not reach.
pub const UNREACHABLE: usize = usize::MAX;

/// A simple undirected graph stored as a sorted edge list plus sorted
/// adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Pairs are unordered and duplicates are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::Input("graph must have at least one vertex".into()));
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({}, {}) has an endpoint outside 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {}", u + 1)));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &list {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Self {
            n,
            edges: list,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// `<L x, x> = sum over edges of (x_i - x_j)^2`.
    pub fn laplacian_quadratic_form(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x.len())?;
        Ok(self
            .edges
            .iter()
            .map(|&(u, v)| {
                let d = x[u] - x[v];
                d * d
            })
            .sum())
    }

    /// Hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Dense graph Laplacian, used by oracles and small problems.
    pub fn laplacian_dense(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            l[(u, u)] += 1.0;
            l[(v, v)] += 1.0;
            l[(u, v)] -= 1.0;
            l[(v, u)] -= 1.0;
        }
        l
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut member = vec![false; self.n];
        for &v in vertices {
            member[v] = true;
        }
        self.edges
            .iter()
            .filter(|&&(u, v)| member[u] && member[v])
            .count()
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::Input(format!(
                "vector has length {len}, graph has {} vertices",
                self.n
            )));
        }
        Ok(())
    }
}

/// The pinned face: distinct vertices in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryFace {
    cycle: Vec<usize>,
}

impl BoundaryFace {
    /// Checks only that the vertices are distinct and in range; see
    /// [`BoundaryFace::validate`] for the structural check.
    pub fn new(cycle: Vec<usize>, n: usize) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Input("boundary must contain at least one vertex".into()));
        }
        let mut seen = vec![false; n];
        for &v in &cycle {
            if v >= n {
                return Err(Error::Input(format!(
                    "boundary vertex {} outside 1..={n}",
                    v + 1
                )));
            }
            if seen[v] {
                return Err(Error::Input(format!("boundary vertex {} repeated", v + 1)));
            }
            seen[v] = true;
        }
        Ok(Self { cycle })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.cycle
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Edges of the cycle in boundary-local indices `(j, j+1 mod n_Γ)`.
    pub fn cycle_edges(&self) -> Vec<(usize, usize)> {
        let m = self.cycle.len();
        match m {
            0 | 1 => Vec::new(),
            2 => vec![(0, 1)],
            _ => (0..m).map(|j| (j, (j + 1) % m)).collect(),
        }
    }

    /// Requires Γ to induce a simple cycle of `g`: consecutive vertices are
    /// adjacent and `G[Γ]` has exactly `n_Γ` edges.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let m = self.cycle.len();
        if m < 3 {
            return Err(Error::Validation(format!(
                "boundary has {m} vertices, a cycle needs at least 3"
            )));
        }
        if let Some(&v) = self.cycle.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::Validation(format!("boundary vertex {} not in graph", v + 1)));
        }
        for j in 0..m {
            let (u, v) = (self.cycle[j], self.cycle[(j + 1) % m]);
            if !g.has_edge(u, v) {
                return Err(Error::Validation(format!(
                    "boundary vertices {} and {} are consecutive but not adjacent",
                    u + 1,
                    v + 1
                )));
            }
        }
        if g.induced_edge_count(&self.cycle) != m {
            let pos: std::collections::HashMap<usize, usize> =
                self.cycle.iter().enumerate().map(|(j, &v)| (v, j)).collect();
            for &(u, v) in g.edges() {
                if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
                    let gap = a.abs_diff(b);
                    if gap != 1 && gap != m - 1 {
                        return Err(Error::Validation(format!(
                            "boundary is not an induced cycle: chord between {} and {}",
                            u + 1,
                            v + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Interior vertices (the complement of Γ) in increasing order.
    pub fn interior(&self, n: usize) -> Vec<usize> {
        let mut member = vec![false; n];
        for &v in &self.cycle {
            member[v] = true;
        }
        (0..n).filter(|&v| !member[v]).collect()
    }
}

/// Periodic index reduction into `0..k`.
pub fn wrap(i: isize, k: usize) -> usize {
    i.rem_euclid(k as isize) as usize
}

/// Index layout of `C_k □ P_ℓ`: ring position `i ∈ 0..k`, layer `j ∈ 0..ℓ`,
/// vertex id `j·k + i`. Layer 0 is the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductLayout {
    pub k: usize,
    pub l: usize,
}

impl ProductLayout {
    pub fn vertex(&self, i: isize, j: usize) -> usize {
        j * self.k + wrap(i, self.k)
    }

    pub fn vertex_count(&self) -> usize {
        self.k * self.l
    }
}

/// Builds `G_{k,ℓ}` (or `G*_{k,ℓ}` when `star`) with boundary the layer-0 ring
/// in cyclic order.
pub fn build_gkl(k: usize, l: usize, star: bool) -> Result<(Graph, BoundaryFace)> {
    if k < 3 {
        return Err(Error::Input(format!("cycle length k = {k} must be at least 3")));
    }
    if l < 1 {
        return Err(Error::Input("path length ℓ must be at least 1".into()));
    }
    let lay = ProductLayout { k, l };
    let mut edges = Vec::new();
    for j in 0..l {
        for i in 0..k as isize {
            edges.push((lay.vertex(i, j), lay.vertex(i + 1, j)));
            if j + 1 < l {
                edges.push((lay.vertex(i, j), lay.vertex(i, j + 1)));
                if star {
                    edges.push((lay.vertex(i, j), lay.vertex(i - 1, j + 1)));
                    edges.push((lay.vertex(i, j), lay.vertex(i + 1, j + 1)));
                }
            }
        }
    }
    let g = Graph::from_edges(lay.vertex_count(), edges)?;
    let gamma = BoundaryFace::new((0..k).collect(), g.vertex_count())?;
    Ok((g, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn builds_triangle() {
        assert_eq!(triangle().edge_count(), 3);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(Error::Input(_))));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(Error::Input(_))));
    }

    #[test]
    fn dedups_unordered_pairs() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn quadratic_form_examples() {
        assert_eq!(triangle().laplacian_quadratic_form(&[1.0, 0.0, 0.0]).unwrap(), 2.0);
        assert_eq!(triangle().laplacian_quadratic_form(&[1.0; 3]).unwrap(), 0.0);
        assert_eq!(
            cycle(4).laplacian_quadratic_form(&[1.0, 0.0, 1.0, 0.0]).unwrap(),
            4.0
        );
        assert!(triangle().laplacian_quadratic_form(&[1.0]).is_err());
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(cycle(8).bfs_distances(0), vec![0, 1, 2, 3, 4, 3, 2, 1]);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.bfs_distances(2), vec![1, 1, 0, 1]);
        let (g, _) = build_gkl(12, 2, false).unwrap();
        let lay = ProductLayout { k: 12, l: 2 };
        // (1,1) to (7,2) in 1-based product coordinates
        assert_eq!(g.bfs_distances(lay.vertex(0, 0))[lay.vertex(6, 1)], 7);
    }

    #[test]
    fn gkl_counts() {
        let (g, gamma) = build_gkl(16, 3, false).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (48, 80));
        gamma.validate(&g).unwrap();
        let (gs, gammas) = build_gkl(16, 3, true).unwrap();
        assert_eq!(gs.edge_count(), 144);
        assert_eq!(gamma, gammas);
        for &(u, v) in g.edges() {
            assert!(gs.has_edge(u, v));
        }
        let (c3, b3) = build_gkl(3, 1, false).unwrap();
        assert_eq!(c3, cycle(3));
        assert_eq!(b3.vertices(), &[0, 1, 2]);
        assert!(build_gkl(2, 3, false).is_err());
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        for (k, l, s) in [(5, 4, false), (7, 3, true), (16, 3, true)] {
            let (g, _) = build_gkl(k, l, s).unwrap();
            let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            assert_eq!(total, 2 * g.edge_count());
        }
    }

    #[test]
    fn boundary_validation() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        BoundaryFace::new(vec![1, 2, 3], 4).unwrap().validate(&k4).unwrap();
        // C4 plus a chord: the 4-cycle is no longer induced
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let err = BoundaryFace::new(vec![0, 1, 2, 3], 4).unwrap().validate(&g);
        assert!(matches!(err, Err(Error::Validation(m)) if m.contains("chord")));
        // non-adjacent consecutive pair
        let err = BoundaryFace::new(vec![0, 2, 1, 3], 4).unwrap().validate(&cycle(4));
        assert!(matches!(err, Err(Error::Validation(_))));
        assert!(BoundaryFace::new(vec![0, 0, 1], 4).is_err());
    }

    #[test]
    fn wrap_is_periodic() {
        assert_eq!(wrap(-1, 5), 4);
        assert_eq!(wrap(5, 5), 0);
        assert_eq!(wrap(12, 5), 2);
    }
}

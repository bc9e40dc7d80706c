use schur_embed::geometry::convex_hull;
use schur_embed::mesh::{
    delaunay, extract_graph, format_stats_csv, run_experiment, sample_points, ExperimentConfig, Shape, STATS_HEADER,
};

/// Twice the signed area of `abc`.
fn area2(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Circumcenter and squared radius from the perpendicular-bisector equations.
fn circumcircle(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> ([f64; 2], f64) {
    let d = 2.0 * area2(a, b, c);
    let (a2, b2, c2) = (a[0] * a[0] + a[1] * a[1], b[0] * b[0] + b[1] * b[1], c[0] * c[0] + c[1] * c[1]);
    let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    let r2 = (a[0] - ux).powi(2) + (a[1] - uy).powi(2);
    ([ux, uy], r2)
}

#[test]
fn empty_circumcircles_exhaustive() {
    for (shape, n, seed) in [(Shape::Disk, 500, 1), (Shape::Rectangle, 500, 2), (Shape::Disk, 300, 3)] {
        let pts = sample_points(shape, n, seed).unwrap();
        let t = delaunay(&pts).unwrap();
        // Euler: 2n − h − 2 triangles
        assert_eq!(t.triangles.len(), 2 * n - t.hull.len() - 2);
        for tri in &t.triangles {
            let [a, b, c] = tri.map(|v| pts[v]);
            assert!(area2(a, b, c) > 0.0);
            let (o, r2) = circumcircle(a, b, c);
            for (v, p) in pts.iter().enumerate() {
                if tri.contains(&v) {
                    continue;
                }
                let d2 = (p[0] - o[0]).powi(2) + (p[1] - o[1]).powi(2);
                assert!(d2 >= r2 * (1.0 - 1e-9), "point {v} inside triangle {tri:?}");
            }
        }
    }
}

#[test]
fn boundary_is_the_hull() {
    let pts = sample_points(Shape::Disk, 400, 5).unwrap();
    let t = delaunay(&pts).unwrap();
    let m = extract_graph(&t).unwrap();
    let mut hull = convex_hull(&pts).unwrap();
    let mut b = m.boundary.vertices().to_vec();
    hull.sort_unstable();
    b.sort_unstable();
    assert_eq!(b, hull);
    assert_eq!(m.graph.edge_count(), 3 * 400 - 3 - t.hull.len());
    assert!(m.graph.is_connected());
}

#[test]
fn experiment_is_deterministic_and_sane() {
    let cfg = ExperimentConfig::new(Shape::Disk, 200, 3, 11);
    let a = run_experiment(&cfg).unwrap();
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(a.stats, b.stats);
    assert!(a.failures.is_empty());
    assert_eq!(a.stats.trials, 3);
    for r in &a.records {
        for h in [Some(r.h_l), r.h_sc, r.h_lc, Some(r.h_c), Some(r.h_alg)].into_iter().flatten() {
            assert!(h / r.h_s >= 1.0 - 1e-9);
        }
        assert!((r.h_s - r.eigenvalue_sum).abs() <= 1e-6 * r.h_s);
    }
    let pct = a.stats.pct_planar_xs.unwrap();
    assert!((0.0..=100.0).contains(&pct));

    let csv = format_stats_csv(std::slice::from_ref(&a.stats), &["seed 11".into()]).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# seed 11"));
    assert_eq!(lines.next().unwrap(), STATS_HEADER.join(","));
    assert!(lines.next().unwrap().starts_with("disk,200,3,"));
}

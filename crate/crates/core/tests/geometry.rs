mod common;

use common::{oracle_corners, oracle_pairs};
use proptest::prelude::*;
use schur_embed::geometry::crossings::{brute_force_pairs, sweep_pairs};
use schur_embed::geometry::{convex_hull, is_convex_position, make_convex, polygon_crossings, CrossingMethod};

fn to_f(p: [i64; 2]) -> [f64; 2] {
    [p[0] as f64, p[1] as f64]
}

fn pt(r: i64) -> impl Strategy<Value = [i64; 2]> {
    [-r..=r, -r..=r]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sweep_and_brute_match_exact_oracle(segs in prop::collection::vec([pt(8), pt(8)], 0..25)) {
        let f: Vec<[[f64; 2]; 2]> = segs.iter().map(|s| [to_f(s[0]), to_f(s[1])]).collect();
        let want = oracle_pairs(&segs);
        let mut b = brute_force_pairs(&f);
        let mut s = sweep_pairs(&f);
        b.sort_unstable();
        s.sort_unstable();
        prop_assert_eq!(&b, &want);
        prop_assert_eq!(&s, &want);
    }

    #[test]
    fn hull_matches_exact_oracle(pts in prop::collection::vec(pt(6), 3..18)) {
        let f: Vec<[f64; 2]> = pts.iter().copied().map(to_f).collect();
        let mut want = oracle_corners(&pts);
        match convex_hull(&f) {
            Ok(mut h) => {
                h.sort_unstable();
                want.sort_unstable();
                prop_assert_eq!(h, want);
            }
            // all collinear or coincident: at most two corners
            Err(_) => prop_assert!(want.len() <= 2),
        }
    }

    #[test]
    fn crossings_are_affine_invariant(
        pts in prop::collection::vec(pt(50), 4..20),
        m in [-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3],
        t in pt(100),
    ) {
        // integer maps keep every coordinate exact
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let f: Vec<[f64; 2]> = pts.iter().copied().map(to_f).collect();
        let moved: Vec<[f64; 2]> = pts
            .iter()
            .map(|p| to_f([m[0] * p[0] + m[1] * p[1] + t[0], m[2] * p[0] + m[3] * p[1] + t[1]]))
            .collect();
        let r0 = polygon_crossings(&f, CrossingMethod::BruteForce).unwrap();
        let r1 = polygon_crossings(&moved, CrossingMethod::Sweep).unwrap();
        prop_assert_eq!(r0.crossings, r1.crossings);
    }

    #[test]
    fn make_convex_is_idempotent(pts in prop::collection::vec([-10.0f64..10.0, -10.0f64..10.0], 3..30)) {
        // order the points by angle so the cycle follows the hull
        let cx = pts.iter().map(|p| p[0]).sum::<f64>() / pts.len() as f64;
        let cy = pts.iter().map(|p| p[1]).sum::<f64>() / pts.len() as f64;
        let mut p = pts.clone();
        p.sort_by(|u, v| (u[1] - cy).atan2(u[0] - cx).total_cmp(&(v[1] - cy).atan2(v[0] - cx)));
        if let Ok(y) = make_convex(&p) {
            let z = make_convex(&y).unwrap();
            for (u, v) in y.iter().zip(&z) {
                prop_assert!((u[0] - v[0]).abs() < 1e-12 && (u[1] - v[1]).abs() < 1e-12);
            }
            prop_assert!(polygon_crossings(&y, CrossingMethod::BruteForce).unwrap().planar);
        }
    }
}

#[test]
fn regular_polygon_is_convex() {
    for m in 3..40 {
        let x: Vec<[f64; 2]> = (0..m)
            .map(|j| {
                let t = std::f64::consts::TAU * j as f64 / m as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        assert!(is_convex_position(&x).unwrap());
        let mut bad = x.clone();
        bad.swap(0, 1.min(m - 1));
        assert!(m == 3 || !is_convex_position(&bad).unwrap());
    }
}

mod common;

use common::{close, rng, uniform_set};
use proptest::prelude::*;
use robustjl::geometry::{
    brute_force_margin_one_class, exact_meb, polytope_distance, squared_distance,
};
use robustjl::{Point, PointSet};

/// Smallest covering radius over a grid of candidate centers, refined
/// around the best cell until the step reaches `resolution`.
fn grid_meb_radius(s: &PointSet, resolution: f64) -> f64 {
    let cover = |x: f64, y: f64| {
        s.rows()
            .map(|r| ((r[0] - x).powi(2) + (r[1] - y).powi(2)).sqrt())
            .fold(0.0, f64::max)
    };
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for r in s.rows() {
        lo_x = lo_x.min(r[0]);
        hi_x = hi_x.max(r[0]);
        lo_y = lo_y.min(r[1]);
        hi_y = hi_y.max(r[1]);
    }
    let mut step = (hi_x - lo_x).max(hi_y - lo_y) / 50.0;
    let mut best = (f64::MAX, 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y));
    loop {
        let (cx, cy) = (best.1, best.2);
        for i in -50..=50 {
            for j in -50..=50 {
                let (x, y) = (cx + i as f64 * step, cy + j as f64 * step);
                let r = cover(x, y);
                if r < best.0 {
                    best = (r, x, y);
                }
            }
        }
        if step <= resolution {
            return best.0;
        }
        step /= 10.0;
    }
}

#[test]
fn meb_matches_grid_search() {
    let mut r = rng(11);
    for _ in 0..5 {
        let s = uniform_set(&mut r, 20, 2, -3.0, 3.0);
        let ball = exact_meb(&s).unwrap();
        let grid = grid_meb_radius(&s, 1e-3);
        assert!(ball.radius <= grid + 1e-9, "{} vs {}", ball.radius, grid);
        assert!(grid - ball.radius <= 2e-3, "{} vs {}", ball.radius, grid);
        for row in s.rows() {
            let p = Point::new(row.to_vec()).unwrap();
            assert!(squared_distance(&p, &ball.center).unwrap().sqrt() <= ball.radius * (1.0 + 1e-9));
        }
    }
}

#[test]
fn meb_radius_is_rotation_invariant() {
    let mut r = rng(12);
    let s = uniform_set(&mut r, 30, 3, -1.0, 2.0);
    let base = exact_meb(&s).unwrap().radius;
    let (c, sn) = (0.3f64.cos(), 0.3f64.sin());
    let rotated = PointSet::new(
        s.rows()
            .map(|p| vec![c * p[0] - sn * p[1], sn * p[0] + c * p[1], p[2]])
            .collect(),
    )
    .unwrap();
    assert!(close(exact_meb(&rotated).unwrap().radius, base, 1e-9));
}

#[test]
fn full_margin_equals_polytope_distance() {
    let mut r = rng(13);
    for _ in 0..5 {
        let s = uniform_set(&mut r, 10, 3, 0.2, 2.0);
        let oracle = brute_force_margin_one_class(&s, 0.0).unwrap();
        assert!(close(oracle, polytope_distance(&s).distance, 1e-12));
    }
}

fn coords(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, d)
}

proptest! {
    #[test]
    fn squared_distance_laws(a in coords(4), b in coords(4), c in coords(4)) {
        let (p, q, x) = (Point::new(a).unwrap(), Point::new(b).unwrap(), Point::new(c).unwrap());
        let pq = squared_distance(&p, &q).unwrap();
        prop_assert_eq!(pq, squared_distance(&q, &p).unwrap());
        prop_assert_eq!(squared_distance(&p, &p).unwrap(), 0.0);
        // |p - x|^2 + |q - x|^2 = 2 |m - x|^2 + |p - q|^2 / 2, m the midpoint
        let m = Point::new(p.coords().iter().zip(q.coords()).map(|(a, b)| 0.5 * (a + b)).collect()).unwrap();
        let lhs = squared_distance(&p, &x).unwrap() + squared_distance(&q, &x).unwrap();
        let rhs = 2.0 * squared_distance(&m, &x).unwrap() + 0.5 * pq;
        prop_assert!(close(lhs, rhs, 1e-10));
    }

    #[test]
    fn meb_covers_its_input(rows in prop::collection::vec(coords(3), 1..25)) {
        let s = PointSet::new(rows).unwrap();
        let ball = exact_meb(&s).unwrap();
        for row in s.rows() {
            let p = Point::new(row.to_vec()).unwrap();
            prop_assert!(squared_distance(&p, &ball.center).unwrap().sqrt() <= ball.radius + 1e-9 * ball.radius.max(1.0));
        }
    }
}

mod common;

use common::{close, gaussian_set, rng, uniform_set};
use proptest::prelude::*;
use robustjl::geometry::{brute_force_margin_one_class, exact_meb, polytope_distance};
use robustjl::hull::{bc_meb, epsilon_approx_check, gilbert, gilbert_minkowski};
use robustjl::jl::recover;
use robustjl::{Error, PointSet};

fn max_pairwise(s: &PointSet) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let sq: f64 = s.row(i).iter().zip(s.row(j)).map(|(a, b)| (a - b) * (a - b)).sum();
            d = d.max(sq);
        }
    }
    d.sqrt()
}

#[test]
fn gilbert_is_within_factor_of_true_distance() {
    let mut r = rng(21);
    let mut checked = 0;
    while checked < 10 {
        let s = gaussian_set(&mut r, 20, 3, &[1.5, 1.0, 0.5], 0.5);
        let rho = polytope_distance(&s).distance;
        if rho < 0.5 {
            continue;
        }
        checked += 1;
        for eps0 in [0.5, 0.1, 0.01] {
            let sol = gilbert(&s, eps0, None).unwrap();
            assert!(sol.distance() <= rho / (1.0 - eps0) + 1e-12);
            assert!(sol.distance() >= rho - 1e-12);
            assert!(epsilon_approx_check(&sol.point, &s, eps0).unwrap());
        }
    }
}

#[test]
fn gilbert_against_subset_oracle() {
    let mut r = rng(22);
    for _ in 0..5 {
        let s = uniform_set(&mut r, 12, 2, 0.5, 3.0);
        let oracle = brute_force_margin_one_class(&s, 0.0).unwrap();
        let sol = gilbert(&s, 0.05, None).unwrap();
        assert!(sol.distance() <= oracle / 0.95 + 1e-12);
    }
}

#[test]
fn gilbert_respects_step_bound() {
    let mut r = rng(23);
    for trial in 0..20 {
        let s = gaussian_set(&mut r, 40, 4, &[2.0, 1.0, 0.0, -1.0], 0.6 + 0.05 * trial as f64);
        let rho = polytope_distance(&s).distance;
        if rho < 1e-3 {
            continue;
        }
        let e = (max_pairwise(&s) / rho).powi(2);
        for eps0 in [0.3, 0.1, 0.03] {
            let bound = 2 * (2.0 * e / eps0).ceil() as usize;
            let sol = gilbert(&s, eps0, None).unwrap();
            assert!(sol.iterations <= bound, "{} > {}", sol.iterations, bound);
        }
    }
}

#[test]
fn minkowski_matches_materialized_difference() {
    let mut r = rng(24);
    let mut compared = 0;
    for _ in 0..10 {
        let q1 = gaussian_set(&mut r, 7, 3, &[2.0, 0.5, 0.0], 0.7);
        let q2 = gaussian_set(&mut r, 5, 3, &[-1.0, 0.0, 0.4], 0.7);
        let rows = q1
            .rows()
            .flat_map(|a| q2.rows().map(move |b| a.iter().zip(b).map(|(x, y)| x - y).collect()))
            .collect();
        let md = PointSet::new(rows).unwrap();
        let explicit = gilbert(&md, 0.01, Some(10_000));
        let implicit = gilbert_minkowski(&q1, &q2, 0.01, Some(10_000));
        match (explicit, implicit) {
            (Ok(e), Ok(m)) => {
                compared += 1;
                assert_eq!(e.iterations, m.iterations);
                let pairs: Vec<(usize, usize)> = e.trace.iter().map(|k| (k / q2.len(), k % q2.len())).collect();
                assert_eq!(pairs, m.trace);
                for (a, b) in e.history.iter().zip(&m.history) {
                    assert!(close(*a, *b, 1e-9));
                }
                for (a, b) in e.point.coords().iter().zip(m.point.coords()) {
                    assert!((a - b).abs() < 1e-9);
                }
            }
            (Err(Error::ZeroDistance { .. }), Err(Error::ZeroDistance { .. })) => {}
            (e, m) => panic!("explicit {e:?} vs implicit {m:?}"),
        }
    }
    assert!(compared >= 5);
}

#[test]
fn bc_meb_against_exact_ball() {
    let mut r = rng(25);
    for eps in [0.5, 0.2, 0.05] {
        for _ in 0..5 {
            let s = uniform_set(&mut r, 60, 2, -2.0, 2.0);
            let exact = exact_meb(&s).unwrap().radius;
            let sol = bc_meb(&s, eps).unwrap();
            assert!(sol.radius <= (1.0 + eps) * exact + 1e-12);
            assert!(sol.iterations <= (2.0 / eps).ceil() as usize);
            assert!(sol.history.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)));
            let back = recover(&sol.comb, &s).unwrap();
            for (a, b) in back.coords().iter().zip(sol.center.coords()) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

fn shifted_points() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), 1..30).prop_map(|rows| {
        rows.into_iter()
            .map(|mut p| {
                p[0] += 2.5;
                p
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn gilbert_descends_and_recovers(rows in shifted_points(), eps0 in 0.01f64..0.5) {
        let s = PointSet::new(rows).unwrap();
        let sol = gilbert(&s, eps0, None).unwrap();
        prop_assert!(sol.history.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(sol.iterations >= 1);
        prop_assert_eq!(sol.iterations, sol.history.len());
        let back = recover(&sol.comb, &s).unwrap();
        for (a, b) in back.coords().iter().zip(sol.point.coords()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        prop_assert!(epsilon_approx_check(&sol.point, &s, eps0).unwrap());
    }

    #[test]
    fn bc_meb_covers(rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 2), 1..40), eps in 0.05f64..0.9) {
        let s = PointSet::new(rows).unwrap();
        let sol = bc_meb(&s, eps).unwrap();
        let exact = exact_meb(&s).unwrap().radius;
        prop_assert!(sol.radius <= (1.0 + eps) * exact + 1e-9);
    }
}

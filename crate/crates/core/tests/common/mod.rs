#![allow(dead_code)]

use rand::Rng as _;
use rand_distr::StandardNormal;
use robustjl::rng::{self, Rng};
use robustjl::PointSet;

pub fn rng(seed: u64) -> Rng {
    rng::seeded(seed, 1000)
}

pub fn gaussian_set(r: &mut Rng, n: usize, d: usize, shift: &[f64], spread: f64) -> PointSet {
    let rows = (0..n)
        .map(|_| {
            (0..d)
                .map(|j| shift.get(j).copied().unwrap_or(0.0) + spread * r.sample::<f64, _>(StandardNormal))
                .collect()
        })
        .collect();
    PointSet::new(rows).unwrap()
}

pub fn uniform_set(r: &mut Rng, n: usize, d: usize, lo: f64, hi: f64) -> PointSet {
    let rows = (0..n)
        .map(|_| (0..d).map(|_| r.random_range(lo..hi)).collect())
        .collect();
    PointSet::new(rows).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

use rand::Rng as _;
use serde::Serialize;

use super::{apply, ProjectionMap};
use crate::geometry::{check_dims, vector, PointSet};
use crate::rng::{self, stream};
use crate::{Error, Result};

/// Relative squared-distance distortion over a set of pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistortionReport {
    pub pairs: usize,
    pub max: f64,
    pub mean: f64,
    pub epsilon: f64,
    /// Share of pairs whose distortion is at most `epsilon`.
    pub fraction_within: f64,
}

/// `|‖f(p) − f(q)‖² − ‖p − q‖²| / ‖p − q‖²`, with coincident points counted
/// as undistorted when their images coincide as well.
pub fn relative_distortion(original_sq: f64, image_sq: f64) -> f64 {
    let diff = (image_sq - original_sq).abs();
    if original_sq > 0.0 {
        diff / original_sq
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

struct Accumulator {
    epsilon: f64,
    pairs: usize,
    within: usize,
    max: f64,
    sum: f64,
}

impl Accumulator {
    fn new(epsilon: f64) -> Self {
        Accumulator { epsilon, pairs: 0, within: 0, max: 0.0, sum: 0.0 }
    }

    fn push(&mut self, value: f64) {
        self.pairs += 1;
        self.sum += value;
        self.max = self.max.max(value);
        if value <= self.epsilon {
            self.within += 1;
        }
    }

    fn finish(self) -> DistortionReport {
        let pairs = self.pairs.max(1) as f64;
        DistortionReport {
            pairs: self.pairs,
            max: self.max,
            mean: self.sum / pairs,
            epsilon: self.epsilon,
            fraction_within: self.within as f64 / pairs,
        }
    }
}

/// Samples `pair_sample` pairs `(i, j)` uniformly with `i != j` (or the lone
/// point against itself when `|P| = 1`) and measures their distortion.
pub fn distortion_report(
    p: &PointSet,
    map: &ProjectionMap,
    pair_sample: usize,
    seed: u64,
    epsilon: f64,
) -> Result<DistortionReport> {
    if pair_sample == 0 {
        return Err(Error::param("pairSample", "must be at least 1"));
    }
    if p.is_empty() {
        return Err(Error::Empty("point set"));
    }
    let fp = apply(map, p)?;
    let n = p.len();
    let mut r = rng::seeded(seed, stream::PAIRS);
    let mut acc = Accumulator::new(epsilon);
    for _ in 0..pair_sample {
        let (i, j) = if n == 1 {
            (0, 0)
        } else {
            let i = r.random_range(0..n);
            let j = (i + r.random_range(1..n)) % n;
            (i, j)
        };
        acc.push(relative_distortion(
            vector::sq_dist(p.row(i), p.row(j)),
            vector::sq_dist(fp.row(i), fp.row(j)),
        ));
    }
    Ok(acc.finish())
}

/// Distortion over all `n(n-1)/2` pairs, given the points and their images.
pub fn distortion_all_pairs(p: &PointSet, fp: &PointSet, epsilon: f64) -> Result<DistortionReport> {
    check_dims(p.len(), fp.len())?;
    if p.len() < 2 {
        return Err(Error::param("n", "need at least two points"));
    }
    let mut acc = Accumulator::new(epsilon);
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            acc.push(relative_distortion(
                vector::sq_dist(p.row(i), p.row(j)),
                vector::sq_dist(fp.row(i), fp.row(j)),
            ));
        }
    }
    Ok(acc.finish())
}

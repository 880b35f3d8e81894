//! Exact minimum enclosing ball by move-to-front Welzl recursion.
//!
//! The ball through a support set `R` is the circumsphere with center in the
//! affine hull of `R`, found from the Gram system of the edge vectors
//! `R_j - R_0`. Solving that system also yields barycentric weights of the
//! center over `R`, which is how callers get the center as a convex
//! combination of input points.
//!
//! Move-to-front recursion is fast in low dimension but explores many
//! support sets when the points are few and in general position in high
//! dimension, which is the regime of small core sets. There an active-set
//! method on the simplex dual is tried first; it needs affinely independent
//! active sets and hands over to the recursion when it meets a dependent one.

use super::vector::{self, solve_linear};
use super::{Point, PointSet};
use crate::{Error, Result};

const MAX_DIM: usize = 10;
const MAX_POINTS: usize = 50;

/// A ball with its center written as a convex combination of input rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
    /// Row indices of the support points, paired with `weights`.
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
}

/// Minimum enclosing ball of `s`.
///
/// Guarded to desk scale: accepted when `d <= 10` or `n <= 50`. The returned
/// radius is the covering radius of the returned center over all of `s`.
pub fn exact_meb(s: &PointSet) -> Result<Ball> {
    if !oracle_accepts(s.len(), s.dim()) {
        return Err(Error::OracleScaleExceeded(format!(
            "exact_meb needs d <= {MAX_DIM} or n <= {MAX_POINTS}, got n = {}, d = {}",
            s.len(),
            s.dim()
        )));
    }
    let all: Vec<usize> = (0..s.len()).collect();
    Ok(meb_of_subset(s, &all))
}

fn oracle_accepts(n: usize, d: usize) -> bool {
    d <= MAX_DIM || n <= MAX_POINTS
}

/// MEB of the rows `indices` of `s`, without the scale guard.
pub(crate) fn meb_of_subset(s: &PointSet, indices: &[usize]) -> Ball {
    debug_assert!(!indices.is_empty());
    if let Some(raw) = active_set(s, indices) {
        return finalize(s, indices, raw);
    }
    let mut order = indices.to_vec();
    let max_support = (s.dim() + 1).min(indices.len());
    let mut support = Vec::with_capacity(max_support);
    let raw = mtf(s, &mut order, indices.len(), &mut support, max_support);
    finalize(s, indices, raw)
}

struct Sphere {
    center: Vec<f64>,
    radius_sq: f64,
    support: Vec<usize>,
    weights: Vec<f64>,
}

impl Sphere {
    fn contains(&self, p: &[f64]) -> bool {
        self.radius_sq >= 0.0 && vector::sq_dist(p, &self.center) <= self.radius_sq * (1.0 + 1e-12)
    }
}

fn mtf(
    s: &PointSet,
    order: &mut [usize],
    end: usize,
    support: &mut Vec<usize>,
    max_support: usize,
) -> Sphere {
    let mut ball = circumsphere(s, support);
    if support.len() == max_support {
        return ball;
    }
    for i in 0..end {
        let idx = order[i];
        if !ball.contains(s.row(idx)) {
            support.push(idx);
            ball = mtf(s, order, i, support, max_support);
            support.pop();
            order[..=i].rotate_right(1);
        }
    }
    ball
}

/// Center of the sphere through `support` lying in its affine hull, as
/// weights over `support`; `None` when the support is affinely dependent.
fn affine_center(s: &PointSet, support: &[usize]) -> Option<Vec<f64>> {
    let base = s.row(support[0]);
    let edges: Vec<Vec<f64>> = support[1..].iter().map(|&j| vector::sub(s.row(j), base)).collect();
    let m = edges.len();
    if m == 0 {
        return Some(vec![1.0]);
    }
    let mut gram = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    for a in 0..m {
        for b in a..m {
            let g = 2.0 * vector::dot(&edges[a], &edges[b]);
            gram[a * m + b] = g;
            gram[b * m + a] = g;
        }
        rhs[a] = vector::norm_sq(&edges[a]);
    }
    let lambda = solve_linear(&mut gram, &mut rhs, m, 1e-13)?;
    let mut weights = Vec::with_capacity(m + 1);
    weights.push(1.0 - lambda.iter().sum::<f64>());
    weights.extend_from_slice(&lambda);
    Some(weights)
}

fn combine(s: &PointSet, support: &[usize], weights: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; s.dim()];
    for (&j, &w) in support.iter().zip(weights) {
        vector::axpy(w, s.row(j), &mut c);
    }
    c
}

/// Minimizes `sum_i w_i |p_i|^2 - |sum_i w_i p_i|^2` over the simplex by
/// adding the farthest violator and solving on the affine hull of the active
/// set, stepping back and dropping points whenever a weight turns negative.
fn active_set(s: &PointSet, indices: &[usize]) -> Option<Sphere> {
    let mut act = vec![indices[0]];
    let mut w = vec![1.0];
    let budget = 20 * indices.len() + 100;
    for _ in 0..budget {
        let center = combine(s, &act, &w);
        let radius_sq = act.iter().map(|&j| vector::sq_dist(s.row(j), &center)).fold(0.0, f64::max);
        let (far, far_sq) = indices
            .iter()
            .map(|&j| (j, vector::sq_dist(s.row(j), &center)))
            .fold((indices[0], f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        if far_sq <= radius_sq * (1.0 + 1e-12) || act.contains(&far) {
            return Some(Sphere { center, radius_sq, support: act, weights: w });
        }
        act.push(far);
        w.push(0.0);
        loop {
            let mu = affine_center(s, &act)?;
            if mu.iter().all(|&m| m > 0.0) {
                w = mu;
                break;
            }
            // largest step toward mu that keeps every weight nonnegative
            let (drop, theta) = w
                .iter()
                .zip(&mu)
                .enumerate()
                .filter(|(_, (_, &m))| m <= 0.0)
                .map(|(i, (&l, &m))| (i, l / (l - m)))
                .fold((usize::MAX, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
            if theta <= 0.0 && drop == act.len() - 1 {
                return None;
            }
            for (l, m) in w.iter_mut().zip(&mu) {
                *l += theta * (m - *l);
            }
            w[drop] = 0.0;
            let keep: Vec<bool> = w.iter().map(|&l| l > 0.0).collect();
            let mut k = keep.iter();
            act.retain(|_| *k.next().unwrap());
            w.retain(|&l| l > 0.0);
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|l| *l /= total);
        }
    }
    None
}

/// Smallest sphere with every point of `support` on its boundary.
fn circumsphere(s: &PointSet, support: &[usize]) -> Sphere {
    let d = s.dim();
    match support.len() {
        0 => Sphere {
            center: vec![0.0; d],
            radius_sq: -1.0,
            support: vec![],
            weights: vec![],
        },
        1 => Sphere {
            center: s.row(support[0]).to_vec(),
            radius_sq: 0.0,
            support: support.to_vec(),
            weights: vec![1.0],
        },
        _ => {
            let base = s.row(support[0]);
            let edges: Vec<Vec<f64>> = support[1..]
                .iter()
                .map(|&j| vector::sub(s.row(j), base))
                .collect();
            let m = edges.len();
            let mut gram = vec![0.0; m * m];
            let mut rhs = vec![0.0; m];
            for a in 0..m {
                for b in a..m {
                    let g = 2.0 * vector::dot(&edges[a], &edges[b]);
                    gram[a * m + b] = g;
                    gram[b * m + a] = g;
                }
                rhs[a] = vector::norm_sq(&edges[a]);
            }
            match solve_linear(&mut gram, &mut rhs, m, 1e-13) {
                Some(lambda) => {
                    let mut center = base.to_vec();
                    for (l, e) in lambda.iter().zip(&edges) {
                        vector::axpy(*l, e, &mut center);
                    }
                    let mut weights = Vec::with_capacity(m + 1);
                    weights.push(1.0 - lambda.iter().sum::<f64>());
                    weights.extend_from_slice(&lambda);
                    let radius_sq = support
                        .iter()
                        .map(|&j| vector::sq_dist(s.row(j), &center))
                        .fold(0.0, f64::max);
                    Sphere {
                        center,
                        radius_sq,
                        support: support.to_vec(),
                        weights,
                    }
                }
                None => {
                    // Affinely dependent support: drop the newest point and
                    // grow the smaller sphere until it reaches it.
                    let mut smaller = circumsphere(s, &support[..support.len() - 1]);
                    let reach = vector::sq_dist(s.row(support[support.len() - 1]), &smaller.center);
                    smaller.radius_sq = smaller.radius_sq.max(reach);
                    smaller
                }
            }
        }
    }
}

fn finalize(s: &PointSet, indices: &[usize], raw: Sphere) -> Ball {
    let mut weights: Vec<f64> = raw.weights.iter().map(|w| w.max(0.0)).collect();
    let total: f64 = weights.iter().sum();
    let (support, weights) = if total > 0.0 {
        weights.iter_mut().for_each(|w| *w /= total);
        (raw.support, weights)
    } else {
        (vec![indices[0]], vec![1.0])
    };
    let mut center = vec![0.0; s.dim()];
    for (&j, &w) in support.iter().zip(&weights) {
        vector::axpy(w, s.row(j), &mut center);
    }
    let radius = indices
        .iter()
        .map(|&j| vector::sq_dist(s.row(j), &center))
        .fold(0.0, f64::max)
        .sqrt();
    let (support, weights) = support
        .into_iter()
        .zip(weights)
        .filter(|&(_, w)| w > 0.0)
        .unzip();
    Ball {
        center: Point::from_vec_unchecked(center),
        radius,
        support,
        weights,
    }
}

//! Wolfe's minimum-norm-point algorithm.
//!
//! An active-set method that is finite in exact arithmetic. It serves as the
//! exact polytope-distance oracle; it shares no code path with the Gilbert
//! iteration it is used to check.

use super::vector::{self, solve_linear};
use super::{Point, PointSet};

/// Closest point of `conv(S)` to the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct MinNormPoint {
    pub point: Point,
    /// `||point||`; zero when the origin lies in the hull.
    pub distance: f64,
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
}

pub fn polytope_distance(s: &PointSet) -> MinNormPoint {
    let n = s.len();
    let scale_sq = s.rows().map(vector::norm_sq).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let start = (0..n)
        .min_by(|&a, &b| vector::norm_sq(s.row(a)).total_cmp(&vector::norm_sq(s.row(b))))
        .unwrap_or(0);
    let mut corral = vec![start];
    let mut weights = vec![1.0];
    let mut x = s.row(start).to_vec();

    for _ in 0..(1000 * n + 100) {
        let xx = vector::norm_sq(&x);
        if xx <= 1e-24 * scale_sq {
            break;
        }
        let (j, val) = (0..n)
            .map(|i| (i, vector::dot(&x, s.row(i))))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
            .unwrap();
        if xx - val <= 1e-12 * scale_sq || corral.contains(&j) {
            break;
        }
        corral.push(j);
        weights.push(0.0);

        loop {
            let Some(y) = affine_minimizer(s, &corral) else {
                corral.pop();
                weights.pop();
                break;
            };
            if y.iter().all(|&v| v > 1e-12) {
                weights = y;
                break;
            }
            let theta = weights
                .iter()
                .zip(&y)
                .filter(|(_, &yi)| yi <= 1e-12)
                .map(|(&wi, &yi)| if wi - yi > 0.0 { wi / (wi - yi) } else { 0.0 })
                .fold(1.0f64, f64::min);
            for (wi, yi) in weights.iter_mut().zip(&y) {
                *wi = (1.0 - theta) * *wi + theta * yi;
            }
            let min_pos = weights
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap();
            let mut keep = 0;
            for i in 0..corral.len() {
                if weights[i] > 1e-15 && i != min_pos {
                    corral[keep] = corral[i];
                    weights[keep] = weights[i];
                    keep += 1;
                }
            }
            corral.truncate(keep);
            weights.truncate(keep);
            if corral.is_empty() {
                corral.push(start);
                weights.push(1.0);
                break;
            }
            renormalize(&mut weights);
        }
        x = combine(s, &corral, &weights);
    }

    renormalize(&mut weights);
    let x = combine(s, &corral, &weights);
    let distance = vector::norm_sq(&x).sqrt();
    let distance = if distance * distance <= 1e-24 * scale_sq {
        0.0
    } else {
        distance
    };
    MinNormPoint {
        point: Point::from_vec_unchecked(x),
        distance,
        support: corral,
        weights,
    }
}

fn renormalize(w: &mut [f64]) {
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        w.iter_mut().for_each(|v| *v /= total);
    }
}

fn combine(s: &PointSet, idx: &[usize], w: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; s.dim()];
    for (&i, &wi) in idx.iter().zip(w) {
        vector::axpy(wi, s.row(i), &mut x);
    }
    x
}

/// Minimum-norm point of the affine hull of `idx`, as affine weights.
fn affine_minimizer(s: &PointSet, idx: &[usize]) -> Option<Vec<f64>> {
    let base = s.row(idx[0]);
    if idx.len() == 1 {
        return Some(vec![1.0]);
    }
    let edges: Vec<Vec<f64>> = idx[1..].iter().map(|&j| vector::sub(s.row(j), base)).collect();
    let m = edges.len();
    let mut gram = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    for a in 0..m {
        for b in a..m {
            let g = vector::dot(&edges[a], &edges[b]);
            gram[a * m + b] = g;
            gram[b * m + a] = g;
        }
        rhs[a] = -vector::dot(&edges[a], base);
    }
    let beta = solve_linear(&mut gram, &mut rhs, m, 1e-13)?;
    let mut w = Vec::with_capacity(m + 1);
    w.push(1.0 - beta.iter().sum::<f64>());
    w.extend(beta);
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[f64]]) -> PointSet {
        PointSet::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn segment_midpoint() {
        let r = polytope_distance(&set(&[&[1.0, 0.0], &[0.0, 1.0]]));
        assert!((r.distance - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((r.point[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vertex_is_closest() {
        let r = polytope_distance(&set(&[&[1.0, 0.0], &[2.0, 0.0], &[3.0, 1.0]]));
        assert!((r.distance - 1.0).abs() < 1e-12);
    }

    #[test]
    fn origin_inside() {
        let r = polytope_distance(&set(&[&[1.0, 0.0], &[-1.0, 1.0], &[-1.0, -1.0]]));
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn triangle_face_in_3d() {
        // Closest point of the simplex {e1, e2, e3} is the centroid.
        let r = polytope_distance(&set(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]));
        assert!((r.distance - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(r.support.len(), 3);
    }
}

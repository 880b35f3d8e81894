use serde::Serialize;

use super::gilbert::{default_max_iter, ZERO_RATIO};
use super::{line_step, max_projection, min_projection, passes, shift_weights};
use crate::geometry::{check_dims, check_open_unit, vector, Point, PointSet};
use crate::jl::ConvexCombination;
use crate::{Error, Result};

/// Output of [`gilbert_minkowski`]: a point of `conv(Q1) - conv(Q2)` with
/// separate convex combinations over each set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinkowskiSolution {
    pub point: Point,
    pub comb_q1: ConvexCombination,
    pub comb_q2: ConvexCombination,
    pub iterations: usize,
    pub history: Vec<f64>,
    /// `(i, j)` pairs naming the difference `Q1[i] - Q2[j]` used at the start
    /// and at each step.
    pub trace: Vec<(usize, usize)>,
}

impl MinkowskiSolution {
    pub fn distance(&self) -> f64 {
        self.point.norm()
    }
}

/// Gilbert's algorithm on the Minkowski difference `Q1 - Q2` without forming
/// it.
///
/// The start is the closest pair between the sets, found by a scan over all
/// `|Q1| |Q2|` pairs. Each step needs one point of least projection from
/// `Q1` and one of greatest projection from `Q2`, so its cost is linear in
/// `|Q1| + |Q2|`. A zero distance means the hulls intersect.
pub fn gilbert_minkowski(
    q1: &PointSet,
    q2: &PointSet,
    eps0: f64,
    max_iter: Option<usize>,
) -> Result<MinkowskiSolution> {
    check_open_unit("eps0", eps0)?;
    if q1.is_empty() || q2.is_empty() {
        return Err(Error::Empty("point set"));
    }
    check_dims(q1.dim(), q2.dim())?;
    let mut start = (0, 0, f64::INFINITY);
    for (i, a) in q1.rows().enumerate() {
        for (j, b) in q2.rows().enumerate() {
            let dsq = vector::sq_dist(a, b);
            if dsq < start.2 {
                start = (i, j, dsq);
            }
        }
    }
    let (i0, j0, v1_sq) = start;
    if v1_sq == 0.0 {
        return Err(Error::ZeroDistance { iterations: 1 });
    }
    let mut v = vector::sub(q1.row(i0), q2.row(j0));
    let limit = max_iter.unwrap_or_else(|| {
        // |a - b - v|^2 <= 2 |a - c1|^2 + 2 |b - c2|^2 for v = c1 - c2
        let r1 = q1.rows().map(|r| vector::sq_dist(r, q1.row(i0))).fold(0.0, f64::max);
        let r2 = q2.rows().map(|r| vector::sq_dist(r, q2.row(j0))).fold(0.0, f64::max);
        default_max_iter(2.0 * (r1 + r2), v1_sq, eps0)
    });
    let mut w1 = vec![0.0; q1.len()];
    let mut w2 = vec![0.0; q2.len()];
    w1[i0] = 1.0;
    w2[j0] = 1.0;
    let mut history = vec![v1_sq.sqrt()];
    let mut trace = vec![(i0, j0)];
    let floor = ZERO_RATIO * ZERO_RATIO * v1_sq;
    let mut p = vec![0.0; v.len()];
    loop {
        let v_sq = vector::norm_sq(&v);
        if v_sq <= floor {
            return Err(Error::ZeroDistance { iterations: history.len() });
        }
        let (i, lo) = min_projection(q1, &v);
        let (j, hi) = max_projection(q2, &v);
        if passes(v_sq, lo - hi, eps0) {
            break;
        }
        if history.len() >= limit {
            return Err(Error::IterationLimit {
                limit,
                best_norm: v_sq.sqrt(),
                best: Point::from_vec_unchecked(v),
            });
        }
        for ((d, a), b) in p.iter_mut().zip(q1.row(i)).zip(q2.row(j)) {
            *d = a - b;
        }
        let t = line_step(&v, &p);
        for (a, b) in v.iter_mut().zip(&p) {
            *a += t * (b - *a);
        }
        shift_weights(&mut w1, i, t);
        shift_weights(&mut w2, j, t);
        history.push(vector::norm_sq(&v).sqrt());
        trace.push((i, j));
    }
    Ok(MinkowskiSolution {
        point: Point::from_vec_unchecked(v),
        comb_q1: ConvexCombination::from_dense(&w1)?,
        comb_q2: ConvexCombination::from_dense(&w2)?,
        iterations: history.len(),
        history,
        trace,
    })
}

use serde::Serialize;

use super::{line_step, min_projection, passes, shift_weights, MIN_DEFAULT_ITER};
use crate::geometry::{check_open_unit, vector, Point, PointSet};
use crate::jl::ConvexCombination;
use crate::{Error, Result};

/// Output of [`gilbert`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparseSolution {
    pub point: Point,
    pub comb: ConvexCombination,
    /// Number of iterates computed, counting the starting point.
    pub iterations: usize,
    /// `|v_i|` for every iterate.
    pub history: Vec<f64>,
    /// Index of the starting point followed by the point picked at each step.
    pub trace: Vec<usize>,
}

impl SparseSolution {
    pub fn distance(&self) -> f64 {
        self.point.norm()
    }
}

/// `10 * 2 * ceil(2 E / eps0)` with `E` estimated as `max_p |p - v1|^2 / |v1|^2`,
/// floored at [`MIN_DEFAULT_ITER`].
pub fn default_max_iter(spread_sq: f64, v1_norm_sq: f64, eps0: f64) -> usize {
    let e = spread_sq / v1_norm_sq;
    let bound = 10.0 * 2.0 * (2.0 * e / eps0).ceil();
    if bound.is_finite() && bound < (usize::MAX / 2) as f64 {
        (bound as usize).max(MIN_DEFAULT_ITER)
    } else {
        usize::MAX / 2
    }
}

/// Below this fraction of the starting norm, an iterate counts as the origin.
pub(crate) const ZERO_RATIO: f64 = 1e-12;

/// Gilbert's algorithm for the point of `conv(s)` nearest the origin.
///
/// Starts at the input point of least norm and repeatedly moves to the
/// closest point to the origin on the segment toward the point of least
/// projection, until the current iterate `v` satisfies
/// `|v| <= min_p <p, v> / (|v| (1 - eps0))`.
///
/// Returns [`Error::ZeroDistance`] when the iterate collapses onto the
/// origin, and [`Error::IterationLimit`] carrying the final iterate when the
/// budget runs out.
pub fn gilbert(s: &PointSet, eps0: f64, max_iter: Option<usize>) -> Result<SparseSolution> {
    check_open_unit("eps0", eps0)?;
    if s.is_empty() {
        return Err(Error::Empty("point set"));
    }
    let n = s.len();
    let mut start = (0, f64::INFINITY);
    for (i, row) in s.rows().enumerate() {
        let nsq = vector::norm_sq(row);
        if nsq < start.1 {
            start = (i, nsq);
        }
    }
    let (i0, v1_sq) = start;
    if v1_sq == 0.0 {
        return Err(Error::ZeroDistance { iterations: 1 });
    }
    let mut v = s.row(i0).to_vec();
    let limit = max_iter.unwrap_or_else(|| {
        let spread = s
            .rows()
            .map(|r| vector::sq_dist(r, &v))
            .fold(0.0, f64::max);
        default_max_iter(spread, v1_sq, eps0)
    });
    let mut w = vec![0.0; n];
    w[i0] = 1.0;
    let mut history = vec![v1_sq.sqrt()];
    let mut trace = vec![i0];
    let floor = ZERO_RATIO * ZERO_RATIO * v1_sq;
    loop {
        let v_sq = vector::norm_sq(&v);
        if v_sq <= floor {
            return Err(Error::ZeroDistance { iterations: history.len() });
        }
        let (k, min_dot) = min_projection(s, &v);
        if passes(v_sq, min_dot, eps0) {
            break;
        }
        if history.len() >= limit {
            return Err(Error::IterationLimit {
                limit,
                best_norm: v_sq.sqrt(),
                best: Point::from_vec_unchecked(v),
            });
        }
        let p = s.row(k);
        let t = line_step(&v, p);
        for (a, b) in v.iter_mut().zip(p) {
            *a += t * (b - *a);
        }
        shift_weights(&mut w, k, t);
        history.push(vector::norm_sq(&v).sqrt());
        trace.push(k);
    }
    Ok(SparseSolution {
        point: Point::from_vec_unchecked(v),
        comb: ConvexCombination::from_dense(&w)?,
        iterations: history.len(),
        history,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jl::recover;

    fn set(rows: &[&[f64]]) -> PointSet {
        PointSet::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn symmetric_pair() {
        let s = set(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let sol = gilbert(&s, 0.1, None).unwrap();
        assert_eq!(sol.point.coords(), &[0.5, 0.5]);
        assert_eq!(sol.iterations, 2);
        assert_eq!(sol.comb.weights(), &[0.5, 0.5]);
        assert!((sol.distance() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(sol.trace, vec![0, 1]);
    }

    #[test]
    fn singleton() {
        let s = set(&[&[2.0, 0.0]]);
        let sol = gilbert(&s, 0.1, None).unwrap();
        assert_eq!(sol.point.coords(), &[2.0, 0.0]);
        assert_eq!(sol.iterations, 1);
    }

    #[test]
    fn origin_inside_hull() {
        let s = set(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);
        assert!(matches!(gilbert(&s, 0.1, None), Err(Error::ZeroDistance { .. })));
        let s = set(&[&[0.0, 0.0], &[1.0, 1.0]]);
        assert!(matches!(gilbert(&s, 0.1, None), Err(Error::ZeroDistance { iterations: 1 })));
    }

    #[test]
    fn iteration_limit_carries_best() {
        let s = set(&[&[1.0, 0.0], &[0.0, 1.0]]);
        match gilbert(&s, 0.1, Some(1)) {
            Err(Error::IterationLimit { limit, best, best_norm }) => {
                assert_eq!(limit, 1);
                assert_eq!(best.coords(), &[1.0, 0.0]);
                assert_eq!(best_norm, 1.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn point_matches_recovered_combination() {
        let s = set(&[&[3.0, 1.0], &[1.0, 4.0], &[2.0, 2.5], &[5.0, -0.5]]);
        let sol = gilbert(&s, 0.01, None).unwrap();
        let back = recover(&sol.comb, &s).unwrap();
        for (a, b) in back.coords().iter().zip(sol.point.coords()) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(sol.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn rejects_bad_parameters() {
        let s = set(&[&[1.0]]);
        assert!(gilbert(&s, 0.0, None).is_err());
        assert!(gilbert(&s, 1.0, None).is_err());
    }

    #[test]
    fn default_budget() {
        assert_eq!(default_max_iter(0.0, 1.0, 0.5), MIN_DEFAULT_ITER);
        assert_eq!(default_max_iter(10.0, 1.0, 0.5), 800);
    }
}

//! Sparse convex-hull solvers that report their answer as a convex
//! combination of input points: Gilbert's polytope-distance iteration, its
//! implicit Minkowski-difference form, and the Bădoiu–Clarkson core-set
//! algorithm for the minimum enclosing ball.

mod bc;
mod gilbert;
mod minkowski;

pub use bc::{bc_meb, MebSolution};
pub use gilbert::{default_max_iter, gilbert, SparseSolution};
pub use minkowski::{gilbert_minkowski, MinkowskiSolution};

use crate::geometry::{vector, Point, PointSet};
use crate::{Error, Result};

/// Lower bound on the default iteration budget.
pub const MIN_DEFAULT_ITER: usize = 64;

/// Signed length of `p` along `v`: `<p, v> / |v|`.
pub fn projection_distance(p: &Point, v: &Point) -> Result<f64> {
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::param("v", "projection onto the zero vector"));
    }
    Ok(p.dot(v)? / norm)
}

/// Whether `|v| <= min_p proj(p, v) / (1 - eps0)` over `s`.
pub fn epsilon_approx_check(v: &Point, s: &PointSet, eps0: f64) -> Result<bool> {
    crate::geometry::check_open_unit("eps0", eps0)?;
    crate::geometry::check_dims(s.dim(), v.dim())?;
    if v.is_zero() {
        return Err(Error::ZeroDistance { iterations: 0 });
    }
    let min = min_projection(s, v.coords()).1;
    Ok(passes(vector::norm_sq(v.coords()), min, eps0))
}

/// Termination test written on unnormalized projections: it compares
/// `|v|^2 (1 - eps0)` against `min <p, v>`.
pub(crate) fn passes(v_norm_sq: f64, min_dot: f64, eps0: f64) -> bool {
    v_norm_sq * (1.0 - eps0) <= min_dot
}

/// Relative width of the band in which projections count as tied.
///
/// Exact ties are routine: after a line step the last two vertices project
/// equally onto the new iterate, and rounding then depends on how the dot
/// product was formed. Treating values inside the band as equal makes the
/// lowest-index rule independent of that.
pub(crate) const TIE_BAND: f64 = 1e-10;

fn tie_band(extreme: f64, v: &[f64]) -> f64 {
    TIE_BAND * (extreme.abs() + vector::norm_sq(v))
}

/// Smallest dot product with `v`, and the lowest index whose value lies
/// within the tie band of it.
pub(crate) fn min_projection(s: &PointSet, v: &[f64]) -> (usize, f64) {
    let lo = s.rows().map(|row| vector::dot(row, v)).fold(f64::INFINITY, f64::min);
    let cut = lo + tie_band(lo, v);
    s.rows()
        .map(|row| vector::dot(row, v))
        .position(|x| x <= cut)
        .map(|i| (i, lo))
        .expect("nonempty set")
}

/// Largest dot product with `v`, and the lowest index whose value lies
/// within the tie band of it.
pub(crate) fn max_projection(s: &PointSet, v: &[f64]) -> (usize, f64) {
    let hi = s.rows().map(|row| vector::dot(row, v)).fold(f64::NEG_INFINITY, f64::max);
    let cut = hi - tie_band(hi, v);
    s.rows()
        .map(|row| vector::dot(row, v))
        .position(|x| x >= cut)
        .map(|i| (i, hi))
        .expect("nonempty set")
}

/// Step length toward `p` minimizing the norm on the segment `[v, p]`.
pub(crate) fn line_step(v: &[f64], p: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, b) in v.iter().zip(p) {
        let e = a - b;
        num += a * e;
        den += e * e;
    }
    if den == 0.0 {
        0.0
    } else {
        (num / den).clamp(0.0, 1.0)
    }
}

/// `w <- (1 - t) w + t e_k` on dense weights.
pub(crate) fn shift_weights(w: &mut [f64], k: usize, t: f64) {
    w.iter_mut().for_each(|x| *x *= 1.0 - t);
    w[k] += t;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert_eq!(projection_distance(&pt(&[1.0, 1.0]), &pt(&[1.0, 0.0])).unwrap(), 1.0);
        assert_eq!(projection_distance(&pt(&[0.0, 3.0]), &pt(&[2.0, 0.0])).unwrap(), 0.0);
        let v = pt(&[3.0, 4.0]);
        assert!((projection_distance(&v, &v).unwrap() - 5.0).abs() < 1e-15);
        assert!(projection_distance(&v, &Point::origin(2)).is_err());
    }

    #[test]
    fn approx_check_examples() {
        let single = PointSet::new(vec![vec![2.0, 0.0]]).unwrap();
        assert!(epsilon_approx_check(&pt(&[2.0, 0.0]), &single, 0.3).unwrap());
        let two = PointSet::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(!epsilon_approx_check(&pt(&[1.0, 0.0]), &two, 0.1).unwrap());
        assert!(epsilon_approx_check(&pt(&[0.5, 0.5]), &two, 0.01).unwrap());
        assert!(matches!(
            epsilon_approx_check(&Point::origin(2), &two, 0.1),
            Err(Error::ZeroDistance { .. })
        ));
    }

    #[test]
    fn step_is_clamped() {
        assert_eq!(line_step(&[1.0, 0.0], &[0.0, 1.0]), 0.5);
        assert_eq!(line_step(&[1.0, 0.0], &[2.0, 0.0]), 0.0);
        assert_eq!(line_step(&[1.0, 0.0], &[-1.0, 0.0]), 0.5);
        assert_eq!(line_step(&[1.0, 0.0], &[0.5, 0.0]), 1.0);
    }
}

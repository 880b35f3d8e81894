//! One-class and two-class SVM with outliers through dimension reduction.
//!
//! A one-class instance `(P, gamma)` asks for the direction `x` maximizing
//! `|x|` such that the hyperplane through `x` orthogonal to it separates the
//! origin from all but a `gamma` fraction of `P`; the optimum is the
//! polytope distance of the best inlier subset. Two-class instances maximize
//! the gap between trimmed classes, i.e. the polytope distance of their
//! Minkowski difference.
//!
//! The pipelines accept any black box implementing [`OneClassSolver`] or
//! [`TwoClassSolver`]. The bundled [`DefaultOneClass`] and [`DefaultTwoClass`]
//! are alternating-trimming heuristics with no approximation guarantee.

mod blackbox;
mod pipeline;

pub use blackbox::{DefaultOneClass, DefaultTwoClass, DEFAULT_ROUNDS};
pub use pipeline::{
    estimate_e_one_class, estimate_e_two_class, solve_one_class, solve_one_class_with_map,
    solve_two_class, solve_two_class_with_map, margin_epsilon, MarginResult,
};

use serde::Serialize;

use crate::geometry::{check_dims, check_fraction, inlier_count, vector, Point, PointSet};
use crate::{Error, Result};

/// A normal vector returned by a black box on the reduced instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlackBoxDirection {
    pub v: Point,
    pub solver: String,
    pub seconds: f64,
}

/// Black box for one-class SVM with outliers on a (reduced) point set.
pub trait OneClassSolver {
    fn name(&self) -> &str;
    fn solve(&self, p: &PointSet, gamma: f64) -> Result<Point>;
}

/// Black box for two-class SVM with outliers; class 1 goes on the positive
/// side of the returned direction.
pub trait TwoClassSolver {
    fn name(&self) -> &str;
    fn solve(&self, p1: &PointSet, p2: &PointSet, gamma1: f64, gamma2: f64) -> Result<Point>;
}

impl<F: Fn(&PointSet, f64) -> Result<Point>> OneClassSolver for F {
    fn name(&self) -> &str {
        "custom"
    }
    fn solve(&self, p: &PointSet, gamma: f64) -> Result<Point> {
        self(p, gamma)
    }
}

impl<F: Fn(&PointSet, &PointSet, f64, f64) -> Result<Point>> TwoClassSolver for F {
    fn name(&self) -> &str {
        "custom"
    }
    fn solve(&self, p1: &PointSet, p2: &PointSet, gamma1: f64, gamma2: f64) -> Result<Point> {
        self(p1, p2, gamma1, gamma2)
    }
}

fn check_direction(p: &PointSet, v: &Point) -> Result<()> {
    check_dims(p.dim(), v.dim())?;
    if v.is_zero() {
        return Err(Error::param("v", "direction is the zero vector"));
    }
    Ok(())
}

/// Indices (ascending) of the `keep` rows with the largest `sign * <p, v>`,
/// lower index first among equal projections.
fn top_by_projection(p: &PointSet, v: &[f64], keep: usize, sign: f64) -> Vec<usize> {
    let proj: Vec<f64> = p.rows().map(|r| sign * vector::dot(r, v)).collect();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| proj[b].total_cmp(&proj[a]).then(a.cmp(&b)));
    order.truncate(keep);
    order.sort_unstable();
    order
}

/// The `ceil((1 - gamma) n)` points with the largest projection onto `v`.
pub fn select_inliers_one_class(fp: &PointSet, v: &Point, gamma: f64) -> Result<Vec<usize>> {
    check_fraction("gamma", gamma)?;
    check_direction(fp, v)?;
    Ok(top_by_projection(fp, v.coords(), inlier_count(fp.len(), gamma), 1.0))
}

/// Keeps the largest projections of class 1 and the smallest of class 2.
pub fn select_inliers_two_class(
    fp1: &PointSet,
    fp2: &PointSet,
    v: &Point,
    gamma1: f64,
    gamma2: f64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    check_fraction("gamma1", gamma1)?;
    check_fraction("gamma2", gamma2)?;
    check_direction(fp1, v)?;
    check_direction(fp2, v)?;
    Ok((
        top_by_projection(fp1, v.coords(), inlier_count(fp1.len(), gamma1), 1.0),
        top_by_projection(fp2, v.coords(), inlier_count(fp2.len(), gamma2), -1.0),
    ))
}

/// Width achieved by `v` on `(p, gamma)`: the smallest projection onto the
/// unit direction among the kept points. Negative when `v` does not separate.
pub fn margin_along(p: &PointSet, v: &Point, gamma: f64) -> Result<f64> {
    let kept = select_inliers_one_class(p, v, gamma)?;
    let norm = v.norm();
    Ok(kept
        .iter()
        .map(|&i| vector::dot(p.row(i), v.coords()) / norm)
        .fold(f64::INFINITY, f64::min))
}

/// Gap achieved by `v` between the trimmed classes.
pub fn margin_along_two_class(
    p1: &PointSet,
    p2: &PointSet,
    v: &Point,
    gamma1: f64,
    gamma2: f64,
) -> Result<f64> {
    let (s1, s2) = select_inliers_two_class(p1, p2, v, gamma1, gamma2)?;
    let norm = v.norm();
    let lo = s1
        .iter()
        .map(|&i| vector::dot(p1.row(i), v.coords()))
        .fold(f64::INFINITY, f64::min);
    let hi = s2
        .iter()
        .map(|&i| vector::dot(p2.row(i), v.coords()))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((lo - hi) / norm)
}

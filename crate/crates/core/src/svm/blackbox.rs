use super::{select_inliers_one_class, select_inliers_two_class, OneClassSolver, TwoClassSolver};
use crate::geometry::{check_fraction, check_open_unit, inlier_count, Point, PointSet};
use crate::hull::{gilbert, gilbert_minkowski};
use crate::{Error, Result};

pub const DEFAULT_ROUNDS: usize = 5;

/// Alternating trimming for one-class SVM with outliers: solve the polytope
/// distance of the current inlier set with Gilbert, re-select the inliers
/// along the result, and repeat until the set stops changing.
///
/// For `gamma > 0` the first inlier set is trimmed along the centroid
/// direction. This is a heuristic; it carries no approximation guarantee.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefaultOneClass {
    pub eps0: f64,
    pub rounds: usize,
}

impl DefaultOneClass {
    pub fn new(eps0: f64) -> Self {
        DefaultOneClass { eps0, rounds: DEFAULT_ROUNDS }
    }

    /// The final direction and the inlier set it was computed from.
    pub fn run(&self, p: &PointSet, gamma: f64) -> Result<(Point, Vec<usize>)> {
        check_open_unit("eps0", self.eps0)?;
        check_fraction("gamma", gamma)?;
        if self.rounds == 0 {
            return Err(Error::param("rounds", "must be at least 1"));
        }
        let mut kept: Vec<usize> = if inlier_count(p.len(), gamma) == p.len() {
            (0..p.len()).collect()
        } else {
            let c = p.centroid();
            if c.is_zero() {
                (0..p.len()).collect()
            } else {
                select_inliers_one_class(p, &c, gamma)?
            }
        };
        let mut v = None;
        for _ in 0..self.rounds {
            let dir = best_effort(gilbert(&p.select(&kept)?, self.eps0, None).map(|s| s.point))?;
            let next = select_inliers_one_class(p, &dir, gamma)?;
            v = Some(dir);
            if next == kept {
                break;
            }
            kept = next;
        }
        Ok((v.expect("at least one round"), kept))
    }
}

impl OneClassSolver for DefaultOneClass {
    fn name(&self) -> &str {
        "alternating-gilbert"
    }
    fn solve(&self, p: &PointSet, gamma: f64) -> Result<Point> {
        self.run(p, gamma).map(|(v, _)| v)
    }
}

/// Two-class counterpart of [`DefaultOneClass`], built on the implicit
/// Minkowski-difference Gilbert iteration. Initial trimming for positive
/// outlier fractions uses the difference of class centroids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefaultTwoClass {
    pub eps0: f64,
    pub rounds: usize,
}

impl DefaultTwoClass {
    pub fn new(eps0: f64) -> Self {
        DefaultTwoClass { eps0, rounds: DEFAULT_ROUNDS }
    }

    pub fn run(
        &self,
        p1: &PointSet,
        p2: &PointSet,
        gamma1: f64,
        gamma2: f64,
    ) -> Result<(Point, (Vec<usize>, Vec<usize>))> {
        check_open_unit("eps0", self.eps0)?;
        check_fraction("gamma1", gamma1)?;
        check_fraction("gamma2", gamma2)?;
        if self.rounds == 0 {
            return Err(Error::param("rounds", "must be at least 1"));
        }
        let everything = ((0..p1.len()).collect(), (0..p2.len()).collect());
        let trims = inlier_count(p1.len(), gamma1) < p1.len() || inlier_count(p2.len(), gamma2) < p2.len();
        let mut kept: (Vec<usize>, Vec<usize>) = if trims {
            let gap = crate::geometry::vector::sub(p1.centroid().coords(), p2.centroid().coords());
            match Point::new(gap) {
                Ok(g) if !g.is_zero() => select_inliers_two_class(p1, p2, &g, gamma1, gamma2)?,
                _ => everything,
            }
        } else {
            everything
        };
        let mut v = None;
        for _ in 0..self.rounds {
            let q1 = p1.select(&kept.0)?;
            let q2 = p2.select(&kept.1)?;
            let dir = best_effort(gilbert_minkowski(&q1, &q2, self.eps0, None).map(|s| s.point))?;
            let next = select_inliers_two_class(p1, p2, &dir, gamma1, gamma2)?;
            v = Some(dir);
            if next == kept {
                break;
            }
            kept = next;
        }
        Ok((v.expect("at least one round"), kept))
    }
}

impl TwoClassSolver for DefaultTwoClass {
    fn name(&self) -> &str {
        "alternating-gilbert-minkowski"
    }
    fn solve(&self, p1: &PointSet, p2: &PointSet, gamma1: f64, gamma2: f64) -> Result<Point> {
        self.run(p1, p2, gamma1, gamma2).map(|(v, _)| v)
    }
}

/// A direction is all the black box needs, so an exhausted iteration budget
/// still yields a usable one.
fn best_effort(r: Result<Point>) -> Result<Point> {
    match r {
        Err(Error::IterationLimit { best, .. }) => Ok(best),
        Err(Error::ZeroDistance { .. }) => Err(Error::NotSeparable(
            "trimmed inlier hull contains the origin".into(),
        )),
        other => other,
    }
}

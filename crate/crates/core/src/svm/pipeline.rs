
use rand::seq::index;
use rand::Rng as _;
use serde::Serialize;

use super::{
    select_inliers_one_class, select_inliers_two_class, BlackBoxDirection, OneClassSolver,
    TwoClassSolver,
};
use crate::geometry::{check_dims, check_fraction, check_open_unit, vector, Point, PointSet};
use crate::hull::{gilbert, gilbert_minkowski};
use crate::jl::{apply, recover, ConvexCombination, MapDescriptor, ProjectionMap, ReduceSpec};
use crate::rng::{self, stream};
use crate::timing::timed;
use crate::{Error, Result, Timing};

/// Cap on the subsample used to estimate the optimal margin.
const ESTIMATE_SAMPLE: usize = 256;

/// Outcome of a margin pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MarginResult {
    /// Recovered normal vector in the original space, not normalized.
    pub direction: Point,
    /// Smallest projection of the declared inliers onto the unit direction
    /// (one-class), or the gap between the classes (two-class); clamped at 0.
    pub width: f64,
    /// Inlier indices per class, ascending.
    pub inliers: Vec<Vec<usize>>,
    /// The direction's convex coefficients over original indices, per class.
    pub combs: Vec<ConvexCombination>,
    /// Gilbert's point in the reduced space.
    pub reduced: Point,
    pub blackbox: BlackBoxDirection,
    pub target_dim: usize,
    pub map: Option<MapDescriptor>,
    pub gilbert_iterations: usize,
    /// `|f(direction) - reduced| / |reduced|`.
    pub recovery_residual: f64,
    pub timing: Timing,
}

/// `eps0 / (5 (E + 1))`, the transform accuracy that preserves margins up to
/// a `(1 - eps0)` factor.
pub fn margin_epsilon(eps0: f64, e: f64) -> f64 {
    eps0 / (5.0 * (e + 1.0))
}

/// Largest squared distance over `2n` sampled pairs of rows drawn from
/// `sets` as if they were concatenated.
fn sampled_diameter_sq(sets: &[&PointSet], r: &mut rng::Rng) -> f64 {
    let n: usize = sets.iter().map(|s| s.len()).sum();
    if n < 2 {
        return 0.0;
    }
    let row = |mut i: usize| {
        for s in sets {
            if i < s.len() {
                return s.row(i);
            }
            i -= s.len();
        }
        unreachable!()
    };
    (0..2 * n)
        .map(|_| {
            let i = r.random_range(0..n);
            let j = (i + r.random_range(1..n)) % n;
            vector::sq_dist(row(i), row(j))
        })
        .fold(0.0, f64::max)
}

fn subsample(s: &PointSet, kept: Vec<usize>, r: &mut rng::Rng) -> Result<PointSet> {
    if kept.len() <= ESTIMATE_SAMPLE {
        return s.select(&kept);
    }
    let picks: Vec<usize> = index::sample(r, kept.len(), ESTIMATE_SAMPLE)
        .into_iter()
        .map(|k| kept[k])
        .collect();
    s.select(&picks)
}

fn coarse_norm(r: Result<f64>) -> Result<f64> {
    match r {
        Err(Error::IterationLimit { best_norm, .. }) => Ok(best_norm),
        Err(Error::ZeroDistance { .. }) => Err(Error::NotSeparable(
            "estimated margin is zero; the trimmed sample hull contains the origin".into(),
        )),
        other => other,
    }
}

/// Estimate of `E = D^2 / rho^2` for a one-class instance.
///
/// `D^2` is the largest squared distance over `2n` random pairs, which can
/// only underestimate the diameter. `rho` is a coarse Gilbert run
/// (`eps0 = 0.5`) on a subsample of the points trimmed along the centroid.
pub fn estimate_e_one_class(p: &PointSet, gamma: f64, seed: u64) -> Result<f64> {
    let mut r = rng::seeded(seed, stream::ESTIMATE);
    let diam_sq = sampled_diameter_sq(&[p], &mut r);
    let c = p.centroid();
    let kept = if c.is_zero() {
        (0..p.len()).collect()
    } else {
        select_inliers_one_class(p, &c, gamma)?
    };
    let sample = subsample(p, kept, &mut r)?;
    let rho = coarse_norm(gilbert(&sample, 0.5, None).map(|s| s.distance()))?;
    Ok(diam_sq / (rho * rho))
}

/// Two-class counterpart of [`estimate_e_one_class`]; pairs are drawn from
/// the union and `rho` comes from the Minkowski-difference iteration.
pub fn estimate_e_two_class(p1: &PointSet, p2: &PointSet, gamma1: f64, gamma2: f64, seed: u64) -> Result<f64> {
    let mut r = rng::seeded(seed, stream::ESTIMATE);
    let diam_sq = sampled_diameter_sq(&[p1, p2], &mut r);
    let gap = vector::sub(p1.centroid().coords(), p2.centroid().coords());
    let (k1, k2) = match Point::new(gap) {
        Ok(g) if !g.is_zero() => select_inliers_two_class(p1, p2, &g, gamma1, gamma2)?,
        _ => ((0..p1.len()).collect(), (0..p2.len()).collect()),
    };
    let s1 = subsample(p1, k1, &mut r)?;
    let s2 = subsample(p2, k2, &mut r)?;
    let rho = coarse_norm(gilbert_minkowski(&s1, &s2, 0.5, None).map(|s| s.distance()))?;
    Ok(diam_sq / (rho * rho))
}

fn check_inputs(p: &PointSet, gamma_name: &'static str, gamma: f64) -> Result<()> {
    check_fraction(gamma_name, gamma)?;
    if p.is_empty() {
        return Err(Error::Empty("point set"));
    }
    Ok(())
}

fn checked_direction(name: &str, v: Result<Point>, dim: usize, seconds: f64) -> Result<BlackBoxDirection> {
    let v = v?;
    let fail = |reason: String| Error::BlackBox { solver: name.to_string(), reason };
    if v.dim() != dim {
        return Err(fail(format!("direction has dimension {}, expected {dim}", v.dim())));
    }
    if v.is_zero() {
        return Err(fail("zero direction".into()));
    }
    Ok(BlackBoxDirection { v, solver: name.to_string(), seconds })
}

fn not_separable(e: Error, what: &str) -> Error {
    match e {
        Error::ZeroDistance { iterations } => Error::NotSeparable(format!(
            "{what} after trimming (Gilbert reached the origin in {iterations} iterations)"
        )),
        other => other,
    }
}

fn residual(map: &ProjectionMap, direction: &Point, reduced: &Point) -> Result<f64> {
    let image = map.apply_point(direction)?;
    Ok(vector::sq_dist(image.coords(), reduced.coords()).sqrt() / reduced.norm())
}

/// One-class SVM with outliers through a seeded transform built from `spec`.
pub fn solve_one_class(
    p: &PointSet,
    gamma: f64,
    eps0: f64,
    spec: &ReduceSpec,
    blackbox: &dyn OneClassSolver,
) -> Result<MarginResult> {
    check_inputs(p, "gamma", gamma)?;
    check_open_unit("eps0", eps0)?;
    let (map, setup) = timed(|| {
        let d_tilde = spec.dimension(p.len(), p.dim(), || {
            Ok(margin_epsilon(eps0, estimate_e_one_class(p, gamma, spec.seed)?))
        })?;
        spec.build(p.dim(), d_tilde)
    });
    let map = map?;
    let mut out = solve_one_class_with_map(p, gamma, eps0, &map, blackbox)?;
    out.timing.jl += setup;
    Ok(out)
}

/// One-class pipeline with a caller-supplied map.
pub fn solve_one_class_with_map(
    p: &PointSet,
    gamma: f64,
    eps0: f64,
    map: &ProjectionMap,
    blackbox: &dyn OneClassSolver,
) -> Result<MarginResult> {
    check_inputs(p, "gamma", gamma)?;
    check_open_unit("eps0", eps0)?;
    check_dims(map.source_dim(), p.dim())?;
    let (fp, t_jl) = timed(|| apply(map, p));
    let fp = fp?;
    let (v, t_bb) = timed(|| blackbox.solve(&fp, gamma));
    let bb = checked_direction(blackbox.name(), v, map.target_dim(), t_bb)?;
    let (recovered, t_rec) = timed(|| -> Result<_> {
        let kept = select_inliers_one_class(&fp, &bb.v, gamma)?;
        let sol = gilbert(&fp.select(&kept)?, eps0, None)
            .map_err(|e| not_separable(e, "reduced inlier hull contains the origin"))?;
        let comb = sol.comb.reindex(&kept);
        let direction = recover(&comb, p)?;
        Ok((kept, sol, comb, direction))
    });
    let (kept, sol, comb, direction) = recovered?;
    let norm = direction.norm();
    let width = if norm > 0.0 {
        kept.iter()
            .map(|&i| vector::dot(p.row(i), direction.coords()) / norm)
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    } else {
        0.0
    };
    Ok(MarginResult {
        recovery_residual: residual(map, &direction, &sol.point)?,
        direction,
        width,
        inliers: vec![kept],
        combs: vec![comb],
        reduced: sol.point,
        blackbox: bb,
        target_dim: map.target_dim(),
        map: map.descriptor().ok(),
        gilbert_iterations: sol.iterations,
        timing: Timing { jl: t_jl, blackbox: t_bb, recover: t_rec },
    })
}

/// Two-class SVM with outliers; class 1 ends up on the positive side.
pub fn solve_two_class(
    p1: &PointSet,
    p2: &PointSet,
    gamma1: f64,
    gamma2: f64,
    eps0: f64,
    spec: &ReduceSpec,
    blackbox: &dyn TwoClassSolver,
) -> Result<MarginResult> {
    check_inputs(p1, "gamma1", gamma1)?;
    check_inputs(p2, "gamma2", gamma2)?;
    check_dims(p1.dim(), p2.dim())?;
    check_open_unit("eps0", eps0)?;
    let (map, setup) = timed(|| {
        let d_tilde = spec.dimension(p1.len() + p2.len(), p1.dim(), || {
            Ok(margin_epsilon(eps0, estimate_e_two_class(p1, p2, gamma1, gamma2, spec.seed)?))
        })?;
        spec.build(p1.dim(), d_tilde)
    });
    let map = map?;
    let mut out = solve_two_class_with_map(p1, p2, gamma1, gamma2, eps0, &map, blackbox)?;
    out.timing.jl += setup;
    Ok(out)
}

/// Two-class pipeline with a caller-supplied map.
pub fn solve_two_class_with_map(
    p1: &PointSet,
    p2: &PointSet,
    gamma1: f64,
    gamma2: f64,
    eps0: f64,
    map: &ProjectionMap,
    blackbox: &dyn TwoClassSolver,
) -> Result<MarginResult> {
    check_inputs(p1, "gamma1", gamma1)?;
    check_inputs(p2, "gamma2", gamma2)?;
    check_open_unit("eps0", eps0)?;
    check_dims(map.source_dim(), p1.dim())?;
    check_dims(map.source_dim(), p2.dim())?;
    let (images, t_jl) = timed(|| Ok::<_, Error>((apply(map, p1)?, apply(map, p2)?)));
    let (fp1, fp2) = images?;
    let (v, t_bb) = timed(|| blackbox.solve(&fp1, &fp2, gamma1, gamma2));
    let bb = checked_direction(blackbox.name(), v, map.target_dim(), t_bb)?;
    let (recovered, t_rec) = timed(|| -> Result<_> {
        let (k1, k2) = select_inliers_two_class(&fp1, &fp2, &bb.v, gamma1, gamma2)?;
        let sol = gilbert_minkowski(&fp1.select(&k1)?, &fp2.select(&k2)?, eps0, None)
            .map_err(|e| not_separable(e, "reduced class hulls overlap"))?;
        let c1 = sol.comb_q1.reindex(&k1);
        let c2 = sol.comb_q2.reindex(&k2);
        let h1 = recover(&c1, p1)?;
        let h2 = recover(&c2, p2)?;
        let direction = Point::new(vector::sub(h1.coords(), h2.coords()))?;
        Ok((k1, k2, sol, c1, c2, direction))
    });
    let (k1, k2, sol, c1, c2, direction) = recovered?;
    let norm = direction.norm();
    let width = if norm > 0.0 {
        let lo = k1
            .iter()
            .map(|&i| vector::dot(p1.row(i), direction.coords()))
            .fold(f64::INFINITY, f64::min);
        let hi = k2
            .iter()
            .map(|&i| vector::dot(p2.row(i), direction.coords()))
            .fold(f64::NEG_INFINITY, f64::max);
        ((lo - hi) / norm).max(0.0)
    } else {
        0.0
    };
    Ok(MarginResult {
        recovery_residual: residual(map, &direction, &sol.point)?,
        direction,
        width,
        inliers: vec![k1, k2],
        combs: vec![c1, c2],
        reduced: sol.point,
        blackbox: bb,
        target_dim: map.target_dim(),
        map: map.descriptor().ok(),
        gilbert_iterations: sol.iterations,
        timing: Timing { jl: t_jl, blackbox: t_bb, recover: t_rec },
    })
}

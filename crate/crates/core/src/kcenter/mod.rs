//! k-center clustering with outliers through dimension reduction.
//!
//! Given `(P, k, gamma)`, find `k` balls of equal, minimal radius covering
//! all but a `gamma` fraction of `P`. The pipeline clusters the reduced
//! points with a black box, replaces each reduced cluster's center by a
//! Bădoiu–Clarkson ball center written over the cluster's points, and
//! recovers the centers in the original space with the same coefficients.

mod charikar;

pub use charikar::{charikar_kcenter_outliers, greedy_feasible, Clustering};


use serde::{Serialize, Serializer};

use crate::geometry::{check_dims, check_fraction, check_open_unit, discard_count, inlier_count, vector, Point, PointSet};
use crate::hull::bc_meb;
use crate::jl::{apply, recover, ConvexCombination, MapDescriptor, ProjectionMap, ReduceSpec};
use crate::timing::timed;
use crate::{Error, Result, Timing};

/// Black box for k-center with outliers: returns at most `k` disjoint
/// clusters holding exactly `ceil((1 - gamma) n)` points in total.
pub trait KCenterSolver {
    fn name(&self) -> &str;
    fn solve(&self, p: &PointSet, k: usize, gamma: f64) -> Result<Vec<Vec<usize>>>;
}

impl<F: Fn(&PointSet, usize, f64) -> Result<Vec<Vec<usize>>>> KCenterSolver for F {
    fn name(&self) -> &str {
        "custom"
    }
    fn solve(&self, p: &PointSet, k: usize, gamma: f64) -> Result<Vec<Vec<usize>>> {
        self(p, k, gamma)
    }
}

/// [`charikar_kcenter_outliers`] as a black box.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Charikar;

impl KCenterSolver for Charikar {
    fn name(&self) -> &str {
        "charikar-greedy"
    }
    fn solve(&self, p: &PointSet, k: usize, gamma: f64) -> Result<Vec<Vec<usize>>> {
        charikar_kcenter_outliers(p, k, gamma).map(|c| c.clusters)
    }
}

fn serialize_assignment<S: Serializer>(a: &[Option<usize>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(a.iter().map(|c| c.map_or(-1, |c| c as i64)))
}

/// Outcome of [`solve_kcenter`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KCenterResult {
    /// One recovered center per nonempty black-box cluster.
    pub centers: Vec<Point>,
    /// Largest distance in the original space from a black-box cluster
    /// member to its recovered center.
    pub radius: f64,
    /// Radius after reassigning every point to its nearest center and
    /// discarding the farthest `floor(gamma n)`.
    pub reassigned_radius: f64,
    /// Cluster of each input point; `None` (`-1` in JSON) marks an outlier.
    #[serde(serialize_with = "serialize_assignment")]
    pub assignment: Vec<Option<usize>>,
    pub clusters: Vec<Vec<usize>>,
    pub combs: Vec<ConvexCombination>,
    /// Bădoiu–Clarkson centers in the reduced space.
    pub reduced_centers: Vec<Point>,
    pub blackbox: String,
    pub target_dim: usize,
    pub map: Option<MapDescriptor>,
    /// Largest `|f(center) - reduced center|`, relative to the reduced
    /// center's norm when that is nonzero.
    pub recovery_residual: f64,
    pub timing: Timing,
}

/// Nearest-center assignment keeping the `ceil((1 - gamma) n)` closest
/// points. Returns per-point cluster (or `None`) and the kept radius.
pub fn assign_and_radius(p: &PointSet, centers: &[Point], gamma: f64) -> Result<(Vec<Option<usize>>, f64)> {
    check_fraction("gamma", gamma)?;
    if centers.is_empty() {
        return Err(Error::Empty("centers"));
    }
    for c in centers {
        check_dims(p.dim(), c.dim())?;
    }
    let nearest: Vec<(usize, f64)> = p
        .rows()
        .map(|row| {
            centers
                .iter()
                .enumerate()
                .map(|(j, c)| (j, vector::sq_dist(row, c.coords())))
                .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
        })
        .collect();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| nearest[a].1.total_cmp(&nearest[b].1).then(a.cmp(&b)));
    let keep = p.len() - discard_count(p.len(), gamma);
    let mut assignment = vec![None; p.len()];
    let mut radius_sq: f64 = 0.0;
    for &i in &order[..keep] {
        assignment[i] = Some(nearest[i].0);
        radius_sq = radius_sq.max(nearest[i].1);
    }
    Ok((assignment, radius_sq.sqrt()))
}

fn validate_clusters(name: &str, clusters: Vec<Vec<usize>>, n: usize, k: usize, m: usize) -> Result<Vec<Vec<usize>>> {
    let fail = |reason: String| Error::BlackBox { solver: name.to_string(), reason };
    let clusters: Vec<Vec<usize>> = clusters.into_iter().filter(|c| !c.is_empty()).collect();
    if clusters.len() > k {
        return Err(fail(format!("{} nonempty clusters for k = {k}", clusters.len())));
    }
    let mut seen = vec![false; n];
    let mut total = 0;
    for &i in clusters.iter().flatten() {
        if i >= n {
            return Err(fail(format!("index {i} out of range")));
        }
        if seen[i] {
            return Err(fail(format!("index {i} in more than one cluster")));
        }
        seen[i] = true;
        total += 1;
    }
    if total != m {
        return Err(fail(format!("clusters cover {total} points, expected {m}")));
    }
    Ok(clusters)
}

/// k-center with outliers through a seeded transform built from `spec`.
/// Under [`crate::jl::TargetDim::Accuracy`] the transform accuracy is `eps`.
pub fn solve_kcenter(
    p: &PointSet,
    k: usize,
    gamma: f64,
    eps: f64,
    spec: &ReduceSpec,
    blackbox: &dyn KCenterSolver,
) -> Result<KCenterResult> {
    check_open_unit("eps", eps)?;
    if p.is_empty() {
        return Err(Error::Empty("point set"));
    }
    let (map, setup) = timed(|| {
        let d_tilde = spec.dimension(p.len(), p.dim(), || Ok(eps))?;
        spec.build(p.dim(), d_tilde)
    });
    let map = map?;
    let mut out = solve_kcenter_with_map(p, k, gamma, eps, &map, blackbox)?;
    out.timing.jl += setup;
    Ok(out)
}

/// k-center pipeline with a caller-supplied map.
pub fn solve_kcenter_with_map(
    p: &PointSet,
    k: usize,
    gamma: f64,
    eps: f64,
    map: &ProjectionMap,
    blackbox: &dyn KCenterSolver,
) -> Result<KCenterResult> {
    check_open_unit("eps", eps)?;
    check_fraction("gamma", gamma)?;
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    if p.is_empty() {
        return Err(Error::Empty("point set"));
    }
    check_dims(map.source_dim(), p.dim())?;
    let n = p.len();
    let (fp, t_jl) = timed(|| apply(map, p));
    let fp = fp?;
    let (clusters, t_bb) = timed(|| blackbox.solve(&fp, k, gamma));
    let clusters = validate_clusters(blackbox.name(), clusters?, n, k, inlier_count(n, gamma))?;
    let (recovered, t_rec) = timed(|| -> Result<_> {
        let mut combs = Vec::with_capacity(clusters.len());
        let mut reduced = Vec::with_capacity(clusters.len());
        let mut centers = Vec::with_capacity(clusters.len());
        for members in &clusters {
            let ball = bc_meb(&fp.select(members)?, eps)?;
            let comb = ball.comb.reindex(members);
            centers.push(recover(&comb, p)?);
            combs.push(comb);
            reduced.push(ball.center);
        }
        Ok((combs, reduced, centers))
    });
    let (combs, reduced_centers, centers) = recovered?;
    let mut assignment = vec![None; n];
    let mut radius_sq: f64 = 0.0;
    let mut recovery_residual: f64 = 0.0;
    for (j, members) in clusters.iter().enumerate() {
        for &i in members {
            assignment[i] = Some(j);
            radius_sq = radius_sq.max(vector::sq_dist(p.row(i), centers[j].coords()));
        }
        let image = map.apply_point(&centers[j])?;
        let err = vector::sq_dist(image.coords(), reduced_centers[j].coords()).sqrt();
        let scale = reduced_centers[j].norm();
        recovery_residual = recovery_residual.max(if scale > 0.0 { err / scale } else { err });
    }
    let reassigned_radius = assign_and_radius(p, &centers, gamma)?.1;
    Ok(KCenterResult {
        centers,
        radius: radius_sq.sqrt(),
        reassigned_radius,
        assignment,
        clusters,
        combs,
        reduced_centers,
        blackbox: blackbox.name().to_string(),
        target_dim: map.target_dim(),
        map: map.descriptor().ok(),
        recovery_residual,
        timing: Timing { jl: t_jl, blackbox: t_bb, recover: t_rec },
    })
}

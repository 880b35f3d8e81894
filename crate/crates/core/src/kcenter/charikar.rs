use serde::Serialize;

use crate::geometry::{check_fraction, inlier_count, vector, PointSet};
use crate::{Error, Result};

/// Output of [`charikar_kcenter_outliers`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clustering {
    /// Index of the input point acting as each cluster's center.
    pub centers: Vec<usize>,
    /// Member indices per cluster, ascending; exactly `ceil((1 - gamma) n)`
    /// points in total.
    pub clusters: Vec<Vec<usize>>,
    /// Largest distance from a member to its cluster's center.
    pub radius: f64,
    /// Smallest candidate threshold at which the greedy succeeded.
    pub threshold: f64,
}

/// Symmetric `n x n` matrix of pairwise distances.
pub(crate) struct Distances {
    n: usize,
    data: Vec<f64>,
}

impl Distances {
    pub(crate) fn new(p: &PointSet) -> Self {
        let n = p.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = vector::sq_dist(p.row(i), p.row(j)).sqrt();
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Distances { n, data }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Sorted distinct values `d` and `d / 3` over pairwise distances `d`,
    /// including 0. The thirds let the `3r` cover radius land exactly on a
    /// pairwise distance.
    fn candidates(&self) -> Vec<f64> {
        let mut c = vec![0.0];
        for i in 0..self.n {
            let row = &self.row(i)[i + 1..];
            c.extend_from_slice(row);
            c.extend(row.iter().map(|d| d / 3.0));
        }
        c.sort_unstable_by(f64::total_cmp);
        c.dedup();
        c
    }
}

/// Greedy at threshold `r`: `k` times, take the point whose `r`-ball holds the
/// most uncovered points (lowest index on ties) and mark everything within
/// `3r` of it as covered by it. Returns per-point owner (pick order).
pub(crate) fn greedy(dist: &Distances, k: usize, r: f64) -> (Vec<usize>, Vec<Option<usize>>, usize) {
    let n = dist.n;
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut centers = Vec::with_capacity(k);
    let mut covered = 0;
    for pick in 0..k {
        if covered == n {
            break;
        }
        let mut best = (0, 0usize);
        for j in 0..n {
            let row = dist.row(j);
            let count = (0..n).filter(|&q| owner[q].is_none() && row[q] <= r).count();
            if count > best.1 {
                best = (j, count);
            }
        }
        let c = best.0;
        centers.push(c);
        let row = dist.row(c);
        for q in 0..n {
            if owner[q].is_none() && row[q] <= 3.0 * r {
                owner[q] = Some(pick);
                covered += 1;
            }
        }
    }
    (centers, owner, covered)
}

/// Whether the greedy covers at least `ceil((1 - gamma) n)` points at `r`.
pub fn greedy_feasible(p: &PointSet, k: usize, gamma: f64, r: f64) -> Result<bool> {
    check_args(p, k, gamma)?;
    let dist = Distances::new(p);
    Ok(greedy(&dist, k, r).2 >= inlier_count(p.len(), gamma))
}

fn check_args(p: &PointSet, k: usize, gamma: f64) -> Result<()> {
    check_fraction("gamma", gamma)?;
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    if p.is_empty() {
        return Err(Error::Empty("point set"));
    }
    Ok(())
}

/// Charikar et al.'s greedy 3-approximation for k-center with outliers.
///
/// Binary search over the sorted candidate thresholds (pairwise distances
/// and their thirds) for the smallest threshold at which [`greedy`] covers `ceil((1 - gamma) n)`
/// points. The search keeps the largest distance as a feasible upper end and
/// stops next to an infeasible candidate; since the greedy succeeds at every
/// threshold at least the optimum with centers restricted to input points,
/// the final threshold never exceeds that optimum, whether or not
/// feasibility is monotone. Covered points beyond the required count are
/// dropped farthest-from-center first, and the reported radius is the
/// actual largest member distance, at most three times the threshold.
pub fn charikar_kcenter_outliers(p: &PointSet, k: usize, gamma: f64) -> Result<Clustering> {
    check_args(p, k, gamma)?;
    let n = p.len();
    let m = inlier_count(n, gamma);
    let dist = Distances::new(p);
    let cand = dist.candidates();
    let feasible = |r: f64| greedy(&dist, k, r).2 >= m;
    let (mut lo, mut hi) = (0usize, cand.len() - 1);
    if feasible(cand[0]) {
        hi = 0;
    } else {
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if feasible(cand[mid]) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    let threshold = cand[hi];
    let (centers, owner, _) = greedy(&dist, k, threshold);
    let mut members: Vec<(f64, usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(q, o)| o.map(|c| (dist.row(centers[c])[q], q, c)))
        .collect();
    members.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    members.truncate(m);
    let radius = members.last().map_or(0.0, |x| x.0);
    let mut clusters = vec![Vec::new(); centers.len()];
    for &(_, q, c) in &members {
        clusters[c].push(q);
    }
    let (centers, clusters): (Vec<usize>, Vec<Vec<usize>>) = centers
        .into_iter()
        .zip(clusters)
        .filter(|(_, c)| !c.is_empty())
        .map(|(c, mut members)| {
            members.sort_unstable();
            (c, members)
        })
        .unzip();
    Ok(Clustering { centers, clusters, radius, threshold })
}

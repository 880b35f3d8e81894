//! Exhaustive oracles for desk-scale certification.
//!
//! Each oracle enumerates subsets, so each carries a hard size guard.

use super::min_norm::polytope_distance;
use super::{check_dims, check_fraction, inlier_count, vector, PointSet};
use crate::{Error, Result};

pub const ORACLE_KCENTER_MAX_N: usize = 14;
pub const ORACLE_KCENTER_MAX_K: usize = 3;
pub const ORACLE_MARGIN_MAX_N: usize = 12;

/// Calls `f` with every `m`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, m: usize, mut f: impl FnMut(&[usize])) {
    if m > n {
        return;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..m).rev().find(|&i| idx[i] != i + n - m) else {
            return;
        };
        idx[pos] += 1;
        for j in (pos + 1)..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Optimal radius of k-center with outliers when centers are restricted to
/// input points.
///
/// Every center subset is enumerated; for each, points are charged their
/// nearest-center distance and the `floor(gamma n)` largest charges are
/// trimmed. Restricting centers to `P` can at most double the continuous
/// optimum: a continuous optimal center can be swapped for any point of its
/// cluster, at the cost of a factor 2 by the triangle inequality.
pub fn brute_force_kcenter_outliers(p: &PointSet, k: usize, gamma: f64) -> Result<f64> {
    check_fraction("gamma", gamma)?;
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    if p.len() > ORACLE_KCENTER_MAX_N || k > ORACLE_KCENTER_MAX_K {
        return Err(Error::OracleScaleExceeded(format!(
            "k-center oracle needs n <= {ORACLE_KCENTER_MAX_N} and k <= {ORACLE_KCENTER_MAX_K}, got n = {}, k = {k}",
            p.len()
        )));
    }
    let n = p.len();
    let kept = inlier_count(n, gamma);
    if kept == 0 {
        return Ok(0.0);
    }
    let mut best = f64::INFINITY;
    let mut charges = vec![0.0; n];
    for_each_combination(n, k.min(n), |centers| {
        for (i, c) in charges.iter_mut().enumerate() {
            *c = centers
                .iter()
                .map(|&j| vector::sq_dist(p.row(i), p.row(j)))
                .fold(f64::INFINITY, f64::min);
        }
        let mut sorted = charges.clone();
        sorted.sort_by(f64::total_cmp);
        best = best.min(sorted[kept - 1]);
    });
    Ok(best.sqrt())
}

/// Optimal one-class margin with outliers: the largest polytope distance over
/// all inlier subsets of size `ceil((1 - gamma) n)`. Zero when the origin lies
/// in every subset's hull.
pub fn brute_force_margin_one_class(p: &PointSet, gamma: f64) -> Result<f64> {
    check_fraction("gamma", gamma)?;
    if p.len() > ORACLE_MARGIN_MAX_N {
        return Err(Error::OracleScaleExceeded(format!(
            "margin oracle needs n <= {ORACLE_MARGIN_MAX_N}, got {}",
            p.len()
        )));
    }
    let m = inlier_count(p.len(), gamma);
    if m == 0 {
        return Err(Error::param("gamma", "trims every point"));
    }
    let mut best = 0.0f64;
    for_each_combination(p.len(), m, |subset| {
        let sub = p.select(subset).expect("valid subset");
        best = best.max(polytope_distance(&sub).distance);
    });
    Ok(best)
}

/// Optimal two-class margin with outliers: the largest distance between
/// `conv(S1)` and `conv(S2)` over inlier subsets of the mandated sizes.
/// The oracle accepts `|P1| + |P2| <= 12`.
pub fn brute_force_margin_two_class(
    p1: &PointSet,
    p2: &PointSet,
    gamma1: f64,
    gamma2: f64,
) -> Result<f64> {
    check_fraction("gamma1", gamma1)?;
    check_fraction("gamma2", gamma2)?;
    check_dims(p1.dim(), p2.dim())?;
    if p1.len() + p2.len() > ORACLE_MARGIN_MAX_N {
        return Err(Error::OracleScaleExceeded(format!(
            "two-class margin oracle needs |P1| + |P2| <= {ORACLE_MARGIN_MAX_N}, got {}",
            p1.len() + p2.len()
        )));
    }
    let m1 = inlier_count(p1.len(), gamma1);
    let m2 = inlier_count(p2.len(), gamma2);
    if m1 == 0 || m2 == 0 {
        return Err(Error::param("gamma", "trims a whole class"));
    }
    let d = p1.dim();
    let mut best = 0.0f64;
    for_each_combination(p1.len(), m1, |s1| {
        for_each_combination(p2.len(), m2, |s2| {
            let mut diff = Vec::with_capacity(s1.len() * s2.len() * d);
            for &i in s1 {
                for &j in s2 {
                    diff.extend(p1.row(i).iter().zip(p2.row(j)).map(|(a, b)| a - b));
                }
            }
            let md = PointSet::from_flat_unchecked(d, diff);
            best = best.max(polytope_distance(&md).distance);
        });
    });
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[f64]]) -> PointSet {
        PointSet::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn combinations_enumerate_binomial() {
        let mut count = 0;
        let mut seen = Vec::new();
        for_each_combination(5, 2, |c| {
            count += 1;
            seen.push(c.to_vec());
        });
        assert_eq!(count, 10);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[9], vec![3, 4]);
        let mut empty = 0;
        for_each_combination(3, 0, |_| empty += 1);
        assert_eq!(empty, 1);
    }

    #[test]
    fn kcenter_coincident_groups() {
        let p = set(&[&[0.0, 0.0], &[0.0, 0.0], &[5.0, 5.0], &[5.0, 5.0]]);
        assert_eq!(brute_force_kcenter_outliers(&p, 2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn kcenter_every_point_a_center() {
        let p = set(&[&[0.0, 1.0], &[3.0, 2.0], &[-4.0, 0.5]]);
        assert_eq!(brute_force_kcenter_outliers(&p, 3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn kcenter_planted_fixture() {
        // Two triples on the x axis plus far outliers; frozen by enumeration.
        let p = set(&[
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[2.0, 0.0],
            &[10.0, 0.0],
            &[11.0, 0.0],
            &[12.5, 0.0],
            &[0.0, 40.0],
            &[30.0, -20.0],
            &[1.0, 1.0],
            &[11.0, 1.0],
        ]);
        let r = brute_force_kcenter_outliers(&p, 2, 0.2).unwrap();
        // Centers (1,0) and (11,0) cover everything but the two outliers;
        // the farthest kept point is (12.5,0) at 1.5.
        assert!((r - 1.5).abs() < 1e-12, "{r}");
    }

    #[test]
    fn kcenter_guard() {
        let p = PointSet::from_flat(1, vec![0.0; 15]).unwrap();
        assert!(matches!(
            brute_force_kcenter_outliers(&p, 1, 0.0),
            Err(Error::OracleScaleExceeded(_))
        ));
    }

    #[test]
    fn margin_examples() {
        let p = set(&[&[1.0, 0.0], &[2.0, 0.0]]);
        assert!((brute_force_margin_one_class(&p, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let p = set(&[&[1.0, 0.0], &[-1.0, 0.0]]);
        assert!((brute_force_margin_one_class(&p, 0.5).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(brute_force_margin_one_class(&p, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn margin_mixed_fixture() {
        // Cluster around (3, 1) plus two points behind the origin.
        let p = set(&[
            &[3.0, 1.0],
            &[2.5, 1.5],
            &[3.5, 0.5],
            &[2.0, 0.8],
            &[3.2, 2.0],
            &[2.8, -0.2],
            &[4.0, 1.0],
            &[2.2, 1.9],
            &[-2.0, -1.0],
            &[-1.0, 0.5],
        ]);
        let w = brute_force_margin_one_class(&p, 0.2).unwrap();
        // Dropping the two far-side points leaves the cluster hull, whose
        // closest point to the origin is the vertex (2.0, 0.8).
        let expect = (2.0f64 * 2.0 + 0.8 * 0.8).sqrt();
        assert!((w - expect).abs() < 1e-9, "{w} vs {expect}");
    }

    #[test]
    fn two_class_slabs() {
        let p1 = set(&[&[1.0, 0.0], &[1.0, 1.0]]);
        let p2 = set(&[&[-1.0, 0.0], &[-1.0, 1.0]]);
        let w = brute_force_margin_two_class(&p1, &p2, 0.0, 0.0).unwrap();
        assert!((w - 2.0).abs() < 1e-12);
    }
}

use rand::seq::index;
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::LabeledDataset;
use crate::geometry::{ceil_count, check_fraction, vector, PointSet};
use crate::hull::bc_meb;
use crate::rng::{self, stream, Rng};
use crate::{Error, Result};

/// Parameters of [`synth_clusters`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SynthSpec {
    pub k: usize,
    pub per_cluster: usize,
    pub d: usize,
    /// Standard deviation of the per-coordinate Gaussian noise.
    pub spread: f64,
    /// Distance between any two cluster centers.
    pub separation: f64,
    /// Shift of every center along the unit diagonal, which moves all blobs
    /// away from the origin.
    pub offset: f64,
}

fn gaussian_vec(r: &mut Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| r.sample::<f64, _>(StandardNormal)).collect()
}

/// `k` Gaussian blobs; center `j` sits at `(separation / sqrt 2) e_j`, so all
/// centers are exactly `separation` apart. Points are ordered cluster by
/// cluster, labels alternate `+1, -1` by cluster parity, and cluster ids are
/// recorded.
pub fn synth_clusters(spec: &SynthSpec, seed: u64) -> Result<LabeledDataset> {
    let SynthSpec { k, per_cluster, d, spread, separation, offset } = *spec;
    if k == 0 || per_cluster == 0 || d == 0 {
        return Err(Error::param("k", "cluster count, cluster size and dimension must be positive"));
    }
    if k > d {
        return Err(Error::param("k", format!("{k} equidistant centers need d >= k, got d = {d}")));
    }
    if !(spread >= 0.0 && separation >= 0.0 && spread.is_finite() && separation.is_finite() && offset.is_finite()) {
        return Err(Error::param("spread", "spread and separation must be finite and nonnegative"));
    }
    let mut r = rng::seeded(seed, stream::SYNTH);
    let step = separation / 2f64.sqrt();
    let diag = offset / (d as f64).sqrt();
    let n = k * per_cluster;
    let mut data = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    let mut ids = Vec::with_capacity(n);
    for j in 0..k {
        for _ in 0..per_cluster {
            let noise = gaussian_vec(&mut r, d);
            data.extend(noise.iter().enumerate().map(|(c, z)| {
                diag + spread * z + if c == j { step } else { 0.0 }
            }));
            labels.push(if j % 2 == 0 { 1 } else { -1 });
            ids.push(j);
        }
    }
    let mut ds = LabeledDataset::new(
        PointSet::from_flat(d, data)?,
        Some(labels),
        format!("synth:k={k},per={per_cluster},d={d},spread={spread},sep={separation},offset={offset},seed={seed}"),
    )?;
    ds.cluster_ids = Some(ids);
    Ok(ds)
}

/// Negates the labels of exactly `ceil(fraction n)` uniformly chosen points.
///
/// The injected set is updated by symmetric difference, so flipping twice
/// with the same seed restores both the labels and the injected set.
pub fn inject_label_flip(ds: &LabeledDataset, fraction: f64, seed: u64) -> Result<LabeledDataset> {
    check_fraction("fraction", fraction)?;
    let mut out = ds.clone();
    let labels = out.labels.as_mut().ok_or_else(|| Error::param("labels", "label flips need a labeled dataset"))?;
    let count = ceil_count(ds.len(), fraction);
    let mut r = rng::seeded(seed, stream::INJECT);
    let mut flipped = index::sample(&mut r, ds.len(), count).into_vec();
    flipped.sort_unstable();
    for &i in &flipped {
        labels[i] = -labels[i];
    }
    let mut injected: Vec<usize> = ds.injected.iter().copied().filter(|i| flipped.binary_search(i).is_err()).collect();
    injected.extend(flipped.iter().copied().filter(|i| ds.injected.binary_search(i).is_err()));
    injected.sort_unstable();
    out.injected = injected;
    Ok(out)
}

/// Appends `ceil(fraction n)` points on spheres of radius `scale * r_j`
/// around approximate cluster balls `(c_j, r_j)`, each around a uniformly
/// chosen cluster.
///
/// Balls come from Bădoiu–Clarkson with `eps = 0.1` on each cluster (the
/// whole set when there are no cluster ids); `r_j` is the covering radius of
/// `c_j`, so every injected point lies outside its cluster's ball whenever
/// `r_j > 0`. Appended points take the cluster's id and label.
pub fn inject_ball_outliers(ds: &LabeledDataset, fraction: f64, scale: f64, seed: u64) -> Result<LabeledDataset> {
    check_fraction("fraction", fraction)?;
    if !(scale > 1.0 && scale.is_finite()) {
        return Err(Error::param("scale", format!("{scale} must exceed 1")));
    }
    let count = ceil_count(ds.len(), fraction);
    if count == 0 {
        return Ok(ds.clone());
    }
    let ids = ds.cluster_ids.clone().unwrap_or_else(|| vec![0; ds.len()]);
    let groups = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut balls = Vec::new();
    for g in 0..groups {
        let members: Vec<usize> = (0..ds.len()).filter(|&i| ids[i] == g).collect();
        if members.is_empty() {
            continue;
        }
        let ball = bc_meb(&ds.points.select(&members)?, 0.1)?;
        let label = ds.labels.as_ref().map(|l| l[members[0]]);
        balls.push((g, ball.center, ball.radius, label));
    }
    let mut r = rng::seeded(seed, stream::INJECT);
    let d = ds.dim();
    let mut data = ds.points.as_flat().to_vec();
    let mut labels = ds.labels.clone();
    let mut cluster_ids = ds.cluster_ids.clone();
    let mut injected = ds.injected.clone();
    for t in 0..count {
        let (g, center, radius, label) = &balls[r.random_range(0..balls.len())];
        let mut u = gaussian_vec(&mut r, d);
        while vector::norm_sq(&u) == 0.0 {
            u = gaussian_vec(&mut r, d);
        }
        let s = scale * radius / vector::norm_sq(&u).sqrt();
        data.extend(center.coords().iter().zip(&u).map(|(c, z)| c + s * z));
        if let (Some(l), Some(lab)) = (labels.as_mut(), label) {
            l.push(*lab);
        }
        if let Some(c) = cluster_ids.as_mut() {
            c.push(*g);
        }
        injected.push(ds.len() + t);
    }
    Ok(LabeledDataset {
        points: PointSet::from_flat(d, data)?,
        labels,
        cluster_ids,
        provenance: format!("{}+ball_outliers(f={fraction},scale={scale},seed={seed})", ds.provenance),
        injected,
    })
}

/// Appends `ceil(fraction n)` points `-s p` for uniformly chosen input points
/// `p` and `s` uniform in `[0.2, 1]`: reflections through the origin, which
/// land on the wrong side of any one-class separator of a blob away from the
/// origin.
pub fn inject_far_side_outliers(ds: &LabeledDataset, fraction: f64, seed: u64) -> Result<LabeledDataset> {
    check_fraction("fraction", fraction)?;
    let count = ceil_count(ds.len(), fraction);
    let mut r = rng::seeded(seed, stream::INJECT);
    let mut data = ds.points.as_flat().to_vec();
    let mut labels = ds.labels.clone();
    let mut cluster_ids = ds.cluster_ids.clone();
    let mut injected = ds.injected.clone();
    for t in 0..count {
        let i = r.random_range(0..ds.len());
        let s: f64 = r.random_range(0.2..=1.0);
        data.extend(ds.points.row(i).iter().map(|x| -s * x));
        if let Some(l) = labels.as_mut() {
            l.push(l[i]);
        }
        if let Some(c) = cluster_ids.as_mut() {
            c.push(c[i]);
        }
        injected.push(ds.len() + t);
    }
    Ok(LabeledDataset {
        points: PointSet::from_flat(ds.dim(), data)?,
        labels,
        cluster_ids,
        provenance: format!("{}+far_side(f={fraction},seed={seed})", ds.provenance),
        injected,
    })
}

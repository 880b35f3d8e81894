//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes plain numbers or a JSON array of `[x, y]` points and
//! returns a JSON string.

use robustjl::data::{synth_clusters, SynthSpec};
use robustjl::jl::{distortion_all_pairs, ProjectionMap, ReduceSpec, TargetDim, Variant};
use robustjl::kcenter::{solve_kcenter, Charikar};
use robustjl::svm::{solve_one_class, DefaultOneClass};
use robustjl::PointSet;
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn parse_points(json: &str) -> Result<PointSet, String> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(json).map_err(|e| format!("points: {e}"))?;
    PointSet::new(rows).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Margin {
    /// Unit normal of the separating line through the origin's side.
    normal: [f64; 2],
    width: f64,
    inliers: Vec<usize>,
    /// Points carrying weight in the recovered direction.
    support: Vec<usize>,
    iterations: usize,
}

/// One-class margin with outliers on planar points. Outliers are the points
/// not listed in `inliers`; the boundary is `<normal, x> = width`.
pub fn margin_json(points: &str, gamma: f64, eps0: f64) -> Result<String, String> {
    let p = parse_points(points)?;
    if p.dim() != 2 {
        return Err("points must be two-dimensional".into());
    }
    let spec = ReduceSpec::new(Variant::Identity, 0, TargetDim::default());
    let res = solve_one_class(&p, gamma, eps0, &spec, &DefaultOneClass::new(eps0)).map_err(|e| e.to_string())?;
    let norm = res.direction.norm();
    to_json(&Margin {
        normal: [res.direction[0] / norm, res.direction[1] / norm],
        width: res.width,
        inliers: res.inliers[0].clone(),
        support: res.combs[0].indices().to_vec(),
        iterations: res.gilbert_iterations,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Clusters {
    centers: Vec<[f64; 2]>,
    radius: f64,
    /// Cluster per point, or -1 for an outlier.
    assignment: Vec<i64>,
}

/// k-center with outliers on planar points.
pub fn kcenter_json(points: &str, k: usize, gamma: f64, eps: f64) -> Result<String, String> {
    let p = parse_points(points)?;
    if p.dim() != 2 {
        return Err("points must be two-dimensional".into());
    }
    let spec = ReduceSpec::new(Variant::Identity, 0, TargetDim::default());
    let res = solve_kcenter(&p, k, gamma, eps, &spec, &Charikar).map_err(|e| e.to_string())?;
    to_json(&Clusters {
        centers: res.centers.iter().map(|c| [c[0], c[1]]).collect(),
        radius: res.reassigned_radius,
        assignment: res.assignment.iter().map(|a| a.map_or(-1, |c| c as i64)).collect(),
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Histogram {
    /// Lower bin edges; the last bin is open above.
    edges: Vec<f64>,
    counts: Vec<usize>,
    max: f64,
    mean: f64,
    fraction_within: f64,
}

/// Distortion histogram of all pairs of `n` Gaussian points in `R^d` under a
/// seeded map to `d_tilde` dimensions.
pub fn distortion_json(variant: &str, n: usize, d: usize, d_tilde: usize, eps: f64, seed: u64) -> Result<String, String> {
    let variant: Variant = variant.parse().map_err(|e: robustjl::Error| e.to_string())?;
    if !(2..=400).contains(&n) || !(1..=4096).contains(&d) {
        return Err("need 2 <= n <= 400 and 1 <= d <= 4096".into());
    }
    let map = if variant == Variant::Identity {
        ProjectionMap::identity(d)
    } else {
        ProjectionMap::new(variant, d, d_tilde, seed).map_err(|e| e.to_string())?
    };
    let p = gaussian_points(n, d, seed)?;
    let fp = robustjl::jl::apply(&map, &p).map_err(|e| e.to_string())?;
    let report = distortion_all_pairs(&p, &fp, eps).map_err(|e| e.to_string())?;
    const BINS: usize = 20;
    let top = (2.0 * eps).max(report.max).max(1e-9);
    let width = top / BINS as f64;
    let mut counts = vec![0; BINS];
    for (i, j) in (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))) {
        let orig = sq_dist(p.row(i), p.row(j));
        let img = sq_dist(fp.row(i), fp.row(j));
        let r = robustjl::jl::relative_distortion(orig, img);
        counts[((r / width) as usize).min(BINS - 1)] += 1;
    }
    to_json(&Histogram {
        edges: (0..BINS).map(|b| b as f64 * width).collect(),
        counts,
        max: report.max,
        mean: report.mean,
        fraction_within: report.fraction_within,
    })
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn gaussian_points(n: usize, d: usize, seed: u64) -> Result<PointSet, String> {
    let spec = SynthSpec { k: 1, per_cluster: n, d, spread: 1.0, separation: 0.0, offset: 0.0 };
    synth_clusters(&spec, seed).map(|ds| ds.points).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = robustMargin)]
pub fn robust_margin(points: &str, gamma: f64, eps0: f64) -> Result<String, JsError> {
    margin_json(points, gamma, eps0).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = kCenter)]
pub fn k_center(points: &str, k: usize, gamma: f64, eps: f64) -> Result<String, JsError> {
    kcenter_json(points, k, gamma, eps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = distortionHistogram)]
pub fn distortion_histogram(
    variant: &str,
    n: usize,
    d: usize,
    d_tilde: usize,
    eps: f64,
    seed: u64,
) -> Result<String, JsError> {
    distortion_json(variant, n, d, d_tilde, eps, seed).map_err(|e| JsError::new(&e))
}

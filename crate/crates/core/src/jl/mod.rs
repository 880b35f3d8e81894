//! Johnson–Lindenstrauss transforms as explicit linear maps.
//!
//! Three seeded constructions are provided:
//!
//! - `gaussian`: i.i.d. `N(0, 1)` entries scaled by `1/sqrt(d~)`.
//! - `binary`: entries `+1`, `-1`, `0` with probabilities `1/6, 1/6, 2/3`,
//!   scaled by `sqrt(3/d~)`.
//! - `fast`: `S * H * diag(s)` with random signs `s`, the normalized
//!   Walsh–Hadamard transform `H` of the next power of two `D >= d`
//!   (inputs are zero-padded), and `S` sampling `d~` distinct rows scaled by
//!   `sqrt(D/d~)`. Applying it costs `O(D log D)` per point.
//!
//! All three preserve squared norms in expectation. A map is fully determined
//! by `(variant, d, d~, seed)` and serializes to exactly that descriptor; the
//! matrix is regenerated on load, never stored.

mod combination;
mod distortion;
mod hadamard;

use rand::seq::index;
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::geometry::{check_dims, vector, Point, PointSet};
use crate::rng::{self, stream};
use crate::{Error, Result};

pub use combination::{recover, ConvexCombination};
pub use distortion::{distortion_all_pairs, distortion_report, relative_distortion, DistortionReport};

/// Default constant in `d~ = ceil(c ln n / eps^2)`.
pub const DEFAULT_DIM_CONSTANT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gaussian,
    Binary,
    Fast,
    /// No reduction: the identity on `R^d`.
    #[serde(rename = "none", alias = "identity")]
    Identity,
    /// A caller-supplied matrix; has no seed descriptor.
    Explicit,
}

impl Variant {
    pub const SEEDED: [Variant; 3] = [Variant::Gaussian, Variant::Binary, Variant::Fast];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Gaussian => "gaussian",
            Variant::Binary => "binary",
            Variant::Fast => "fast",
            Variant::Identity => "none",
            Variant::Explicit => "explicit",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Variant::Gaussian),
            "binary" => Ok(Variant::Binary),
            "fast" => Ok(Variant::Fast),
            "none" | "identity" => Ok(Variant::Identity),
            other => Err(Error::param("variant", format!("unknown variant `{other}`"))),
        }
    }
}

/// Seed descriptor of a map: `{"variant", "d", "dTilde", "seed"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MapDescriptor {
    pub variant: Variant,
    pub d: usize,
    pub d_tilde: usize,
    pub seed: u64,
}

impl MapDescriptor {
    pub fn build(&self) -> Result<ProjectionMap> {
        ProjectionMap::new(self.variant, self.d, self.d_tilde, self.seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Operator {
    /// Row-major `d~ x d`.
    Dense(Vec<f64>),
    Fast {
        padded: usize,
        signs: Vec<f64>,
        rows: Vec<usize>,
        scale: f64,
    },
    Identity,
}

/// A linear map `R^d -> R^d~`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMap {
    variant: Variant,
    source_dim: usize,
    target_dim: usize,
    seed: u64,
    op: Operator,
}

fn check_dims_pair(d: usize, d_tilde: usize) -> Result<()> {
    if d == 0 || d_tilde == 0 || d_tilde > d {
        return Err(Error::param(
            "dTilde",
            format!("need 1 <= dTilde <= d, got d = {d}, dTilde = {d_tilde}"),
        ));
    }
    Ok(())
}

impl ProjectionMap {
    /// Builds the seeded map of the given variant.
    pub fn new(variant: Variant, d: usize, d_tilde: usize, seed: u64) -> Result<Self> {
        match variant {
            Variant::Gaussian => make_gaussian(d, d_tilde, seed),
            Variant::Binary => make_binary(d, d_tilde, seed),
            Variant::Fast => make_fast(d, d_tilde, seed),
            Variant::Identity => {
                if d_tilde != d {
                    return Err(Error::param("dTilde", "the identity map keeps dTilde = d"));
                }
                Ok(ProjectionMap::identity(d))
            }
            Variant::Explicit => Err(Error::param(
                "variant",
                "explicit maps are built with ProjectionMap::from_matrix",
            )),
        }
    }

    pub fn identity(d: usize) -> Self {
        ProjectionMap {
            variant: Variant::Identity,
            source_dim: d,
            target_dim: d,
            seed: 0,
            op: Operator::Identity,
        }
    }

    /// Wraps a caller-supplied row-major `d_tilde x d` matrix.
    pub fn from_matrix(d_tilde: usize, d: usize, matrix: Vec<f64>) -> Result<Self> {
        check_dims_pair(d, d_tilde)?;
        check_dims(d * d_tilde, matrix.len())?;
        if let Some(position) = matrix.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { position });
        }
        Ok(ProjectionMap {
            variant: Variant::Explicit,
            source_dim: d,
            target_dim: d_tilde,
            seed: 0,
            op: Operator::Dense(matrix),
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Sign diagonal and sampled Hadamard rows of a fast map.
    pub fn fast_parts(&self) -> Option<(&[f64], &[usize])> {
        match &self.op {
            Operator::Fast { signs, rows, .. } => Some((signs, rows)),
            _ => None,
        }
    }

    pub fn descriptor(&self) -> Result<MapDescriptor> {
        if self.variant == Variant::Explicit {
            return Err(Error::NotDescribable("explicit matrix".into()));
        }
        Ok(MapDescriptor {
            variant: self.variant,
            d: self.source_dim,
            d_tilde: self.target_dim,
            seed: self.seed,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.descriptor()?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<MapDescriptor>(s)?.build()
    }

    /// Image of one point.
    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        check_dims(self.source_dim, p.dim())?;
        let mut out = vec![0.0; self.target_dim];
        let mut scratch = self.scratch();
        self.apply_row(p.coords(), &mut out, &mut scratch);
        Ok(Point::from_vec_unchecked(out))
    }

    /// The `d~ x d` matrix of the map, obtained by applying it to the
    /// standard basis.
    pub fn to_dense(&self) -> Vec<f64> {
        let (s, t) = (self.source_dim, self.target_dim);
        let mut dense = vec![0.0; s * t];
        let mut basis = vec![0.0; s];
        let mut col = vec![0.0; t];
        let mut scratch = self.scratch();
        for c in 0..s {
            basis[c] = 1.0;
            self.apply_row(&basis, &mut col, &mut scratch);
            basis[c] = 0.0;
            for r in 0..t {
                dense[r * s + c] = col[r];
            }
        }
        dense
    }

    fn scratch(&self) -> Vec<f64> {
        match &self.op {
            Operator::Fast { padded, .. } => vec![0.0; *padded],
            _ => Vec::new(),
        }
    }

    fn apply_row(&self, p: &[f64], out: &mut [f64], scratch: &mut [f64]) {
        match &self.op {
            Operator::Identity => out.copy_from_slice(p),
            Operator::Dense(m) => dense_apply(m, self.source_dim, p, out),
            Operator::Fast {
                signs, rows, scale, ..
            } => {
                let d = p.len();
                for ((b, &x), &s) in scratch.iter_mut().zip(p).zip(signs) {
                    *b = x * s;
                }
                scratch[d..].iter_mut().for_each(|b| *b = 0.0);
                hadamard::fwht(scratch);
                for (o, &r) in out.iter_mut().zip(rows) {
                    *o = scratch[r] * scale;
                }
            }
        }
    }
}

fn dense_apply(m: &[f64], d: usize, p: &[f64], out: &mut [f64]) {
    let mut rows = m.chunks_exact(d);
    let mut outs = out.chunks_exact_mut(4);
    for o in &mut outs {
        let (r0, r1, r2, r3) = (
            rows.next().unwrap(),
            rows.next().unwrap(),
            rows.next().unwrap(),
            rows.next().unwrap(),
        );
        let mut acc = [0.0f64; 4];
        for c in 0..d {
            let x = p[c];
            acc[0] += r0[c] * x;
            acc[1] += r1[c] * x;
            acc[2] += r2[c] * x;
            acc[3] += r3[c] * x;
        }
        o.copy_from_slice(&acc);
    }
    for (o, r) in outs.into_remainder().iter_mut().zip(rows) {
        *o = vector::dot(r, p);
    }
}

/// `ceil(c ln n / eps^2)`; callers clamp the result to `[1, d]`.
pub fn target_dimension(n: usize, epsilon: f64, c: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::param("n", "need at least two points"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::param("epsilon", format!("{epsilon} is outside (0, 1)")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::param("c", "must be positive"));
    }
    let raw = (c * (n as f64).ln() / (epsilon * epsilon)).ceil();
    Ok(if raw >= usize::MAX as f64 {
        usize::MAX
    } else {
        raw as usize
    })
}

/// Inverse of [`target_dimension`]: `sqrt(c ln n / d~)`.
pub fn epsilon_for_dimension(n: usize, d_tilde: usize, c: f64) -> f64 {
    (c * (n as f64).ln() / d_tilde as f64).sqrt()
}

/// Target dimension for a reduction rate, `ceil(rate * d)` clamped to `[1, d]`.
pub fn dimension_for_rate(d: usize, rate: f64) -> usize {
    ((rate * d as f64 - 1e-9).ceil() as usize).clamp(1, d)
}

pub fn make_gaussian(d: usize, d_tilde: usize, seed: u64) -> Result<ProjectionMap> {
    check_dims_pair(d, d_tilde)?;
    let mut r = rng::seeded(seed, stream::GAUSSIAN);
    let scale = 1.0 / (d_tilde as f64).sqrt();
    let m = (0..d * d_tilde)
        .map(|_| r.sample::<f64, _>(StandardNormal) * scale)
        .collect();
    Ok(ProjectionMap {
        variant: Variant::Gaussian,
        source_dim: d,
        target_dim: d_tilde,
        seed,
        op: Operator::Dense(m),
    })
}

pub fn make_binary(d: usize, d_tilde: usize, seed: u64) -> Result<ProjectionMap> {
    check_dims_pair(d, d_tilde)?;
    let mut r = rng::seeded(seed, stream::BINARY);
    let s = (3.0 / d_tilde as f64).sqrt();
    let m = (0..d * d_tilde)
        .map(|_| match r.random_range(0u8..6) {
            0 => s,
            1 => -s,
            _ => 0.0,
        })
        .collect();
    Ok(ProjectionMap {
        variant: Variant::Binary,
        source_dim: d,
        target_dim: d_tilde,
        seed,
        op: Operator::Dense(m),
    })
}

pub fn make_fast(d: usize, d_tilde: usize, seed: u64) -> Result<ProjectionMap> {
    check_dims_pair(d, d_tilde)?;
    let padded = d.next_power_of_two();
    let mut sign_rng = rng::seeded(seed, stream::FAST_SIGNS);
    let signs = (0..d)
        .map(|_| if sign_rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    let mut row_rng = rng::seeded(seed, stream::FAST_ROWS);
    let rows = index::sample(&mut row_rng, padded, d_tilde).into_vec();
    // sqrt(D / d~) row scaling times the 1/sqrt(D) Hadamard normalization
    let scale = 1.0 / (d_tilde as f64).sqrt();
    Ok(ProjectionMap {
        variant: Variant::Fast,
        source_dim: d,
        target_dim: d_tilde,
        seed,
        op: Operator::Fast {
            padded,
            signs,
            rows,
            scale,
        },
    })
}

/// How a pipeline picks the reduced dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TargetDim {
    /// `ceil(c ln n / eps^2)` with `eps` the accuracy the pipeline needs for its guarantee.
    Accuracy { c: f64 },
    /// An explicit `d~`.
    Fixed(usize),
    /// `ceil(rate * d)`.
    Rate(f64),
}

impl Default for TargetDim {
    fn default() -> Self {
        TargetDim::Accuracy { c: DEFAULT_DIM_CONSTANT }
    }
}

/// Variant, seed and dimension rule of a reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReduceSpec {
    pub variant: Variant,
    pub seed: u64,
    pub target: TargetDim,
}

impl ReduceSpec {
    pub fn new(variant: Variant, seed: u64, target: TargetDim) -> Self {
        ReduceSpec { variant, seed, target }
    }

    /// Resolves `d~` for `n` points in `R^d`, clamped to `[1, d]`.
    /// `accuracy` is only evaluated for [`TargetDim::Accuracy`].
    pub fn dimension(&self, n: usize, d: usize, accuracy: impl FnOnce() -> Result<f64>) -> Result<usize> {
        if self.variant == Variant::Identity {
            return Ok(d);
        }
        match self.target {
            TargetDim::Accuracy { c } => Ok(target_dimension(n.max(2), accuracy()?, c)?.clamp(1, d)),
            TargetDim::Fixed(k) if k >= 1 && k <= d => Ok(k),
            TargetDim::Fixed(k) => Err(Error::param("dTilde", format!("{k} is outside [1, {d}]"))),
            TargetDim::Rate(r) if r > 0.0 && r <= 1.0 => Ok(dimension_for_rate(d, r)),
            TargetDim::Rate(r) => Err(Error::param("rate", format!("{r} is outside (0, 1]"))),
        }
    }

    /// The map for `d~`. A full-dimensional `d~ = d` yields the identity,
    /// since a random square map is not an isometry.
    pub fn build(&self, d: usize, d_tilde: usize) -> Result<ProjectionMap> {
        if d_tilde == d {
            return Ok(ProjectionMap::identity(d));
        }
        ProjectionMap::new(self.variant, d, d_tilde, self.seed)
    }
}

/// Images of every point; row `i` of the output is `f(P[i])`.
pub fn apply(map: &ProjectionMap, p: &PointSet) -> Result<PointSet> {
    check_dims(map.source_dim, p.dim())?;
    let t = map.target_dim;
    let mut out = vec![0.0; p.len() * t];
    if let Operator::Dense(m) = &map.op {
        // out (n x t) = P (n x d) M^T, with M stored row-major as t x d
        let (n, d) = (p.len(), map.source_dim);
        if n > 0 {
            unsafe {
                matrixmultiply::dgemm(
                    n,
                    d,
                    t,
                    1.0,
                    p.as_flat().as_ptr(),
                    d as isize,
                    1,
                    m.as_ptr(),
                    1,
                    d as isize,
                    0.0,
                    out.as_mut_ptr(),
                    t as isize,
                    1,
                );
            }
        }
        return Ok(PointSet::from_flat_unchecked(t, out));
    }
    let mut scratch = map.scratch();
    for (row, dst) in p.rows().zip(out.chunks_exact_mut(t)) {
        map.apply_row(row, dst, &mut scratch);
    }
    Ok(PointSet::from_flat_unchecked(t, out))
}

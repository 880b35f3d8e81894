//! Dense points, metric primitives and brute-force oracles.
//!
//! The origin is always the all-zero vector. One-class inputs are taken as
//! already centered on it. All arithmetic is `f64`.

pub(crate) mod meb;
mod min_norm;
mod oracles;
mod triangle;
pub mod vector;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use meb::{exact_meb, Ball};
pub use min_norm::{polytope_distance, MinNormPoint};
pub use oracles::{
    brute_force_kcenter_outliers, brute_force_margin_one_class, brute_force_margin_two_class,
    ORACLE_KCENTER_MAX_K, ORACLE_KCENTER_MAX_N, ORACLE_MARGIN_MAX_N,
};
pub use triangle::{check_triangle_bound, triangle_bound, TriangleWitness};

/// Relative tolerance used for floating-point comparisons unless an
/// operation states its own.
pub const REL_TOL: f64 = 1e-9;

/// A point in R^d with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("point needs at least one coordinate"));
        }
        if let Some(position) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { position });
        }
        Ok(Point(coords))
    }

    pub fn origin(d: usize) -> Self {
        Point(vec![0.0; d.max(1)])
    }

    /// Callers guarantee non-empty, finite coordinates.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        vector::norm_sq(&self.0).sqrt()
    }

    pub fn dot(&self, other: &Point) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(vector::dot(&self.0, &other.0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// `n >= 1` points of a common dimension `d >= 1`, stored row-major.
/// Row indices are the identities used by every convex combination.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl PointSet {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let d = rows.first().ok_or(Error::Empty("point set"))?.len();
        let mut data = Vec::with_capacity(rows.len() * d);
        for row in &rows {
            check_dims(d, row.len())?;
            data.extend_from_slice(row);
        }
        Self::from_flat(d, data)
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        let d = points.first().ok_or(Error::Empty("point set"))?.dim();
        let mut data = Vec::with_capacity(points.len() * d);
        for p in points {
            check_dims(d, p.dim())?;
            data.extend_from_slice(p.coords());
        }
        Self::from_flat(d, data)
    }

    /// Builds a set from concatenated rows of length `d`.
    pub fn from_flat(d: usize, data: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Empty("point dimension"));
        }
        if data.is_empty() {
            return Err(Error::Empty("point set"));
        }
        if data.len() % d != 0 {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: data.len() % d,
            });
        }
        if let Some(position) = data.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { position });
        }
        Ok(PointSet {
            n: data.len() / d,
            d,
            data,
        })
    }

    pub(crate) fn from_flat_unchecked(d: usize, data: Vec<f64>) -> Self {
        debug_assert!(d > 0 && !data.is_empty() && data.len() % d == 0);
        PointSet {
            n: data.len() / d,
            d,
            data,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn point(&self, i: usize) -> Point {
        Point(self.row(i).to_vec())
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.d)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// The subset at `indices`, in that order. Row `j` of the result is row
    /// `indices[j]` of `self`.
    pub fn select(&self, indices: &[usize]) -> Result<PointSet> {
        if indices.is_empty() {
            return Err(Error::Empty("selection"));
        }
        let mut data = Vec::with_capacity(indices.len() * self.d);
        for &i in indices {
            if i >= self.n {
                return Err(Error::param("indices", format!("index {i} out of range {}", self.n)));
            }
            data.extend_from_slice(self.row(i));
        }
        Ok(PointSet::from_flat_unchecked(self.d, data))
    }

    /// Appends the rows of `other`.
    pub fn concat(&self, other: &PointSet) -> Result<PointSet> {
        check_dims(self.d, other.d)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(PointSet::from_flat_unchecked(self.d, data))
    }

    pub fn centroid(&self) -> Point {
        let mut c = vec![0.0; self.d];
        for row in self.rows() {
            vector::axpy(1.0, row, &mut c);
        }
        let inv = 1.0 / self.n as f64;
        c.iter_mut().for_each(|v| *v *= inv);
        Point(c)
    }

    /// Largest pairwise distance, by exhaustive scan.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                best = best.max(vector::sq_dist(self.row(i), self.row(j)));
            }
        }
        best.sqrt()
    }
}

/// `sum_i (p_i - q_i)^2`.
pub fn squared_distance(p: &Point, q: &Point) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    Ok(vector::sq_dist(p.coords(), q.coords()))
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Number of inliers kept when a `gamma` fraction of `n` points is trimmed:
/// `n - floor(gamma * n)`, which equals `ceil((1 - gamma) * n)`.
///
/// The product is nudged by `1e-9` so that, e.g., `gamma = 0.7, n = 10`
/// discards exactly 7 points despite `0.7 * 10` rounding below 7.
pub fn inlier_count(n: usize, gamma: f64) -> usize {
    n - discard_count(n, gamma)
}

/// `floor(gamma * n)`, robust to representation error.
pub fn discard_count(n: usize, gamma: f64) -> usize {
    let raw = (gamma * n as f64 + 1e-9).floor();
    (raw.max(0.0) as usize).min(n)
}

/// `ceil(fraction * n)`, robust to representation error.
pub fn ceil_count(n: usize, fraction: f64) -> usize {
    let raw = (fraction * n as f64 - 1e-9).ceil();
    (raw.max(0.0) as usize).min(n)
}

pub(crate) fn check_fraction(name: &'static str, gamma: f64) -> Result<()> {
    if (0.0..1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::param(name, format!("{gamma} is outside [0, 1)")))
    }
}

pub(crate) fn check_open_unit(name: &'static str, eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("{eps} is outside (0, 1)")))
    }
}

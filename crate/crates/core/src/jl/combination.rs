use serde::Serialize;

use crate::geometry::{vector, Point, PointSet, REL_TOL};
use crate::{Error, Result};

/// Non-negative weights summing to one over distinct point-set indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexCombination {
    indices: Vec<usize>,
    weights: Vec<f64>,
}

impl ConvexCombination {
    pub fn new(indices: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if indices.len() != weights.len() {
            return Err(Error::InvalidCombination(format!(
                "{} indices but {} weights",
                indices.len(),
                weights.len()
            )));
        }
        if indices.is_empty() {
            return Err(Error::InvalidCombination("no terms".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidCombination(format!("weight {w} is negative or non-finite")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > REL_TOL {
            return Err(Error::InvalidCombination(format!("weights sum to {total}")));
        }
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCombination("repeated index".into()));
        }
        Ok(ConvexCombination { indices, weights })
    }

    pub fn singleton(index: usize) -> Self {
        ConvexCombination {
            indices: vec![index],
            weights: vec![1.0],
        }
    }

    /// Builds the combination from dense weights, keeping the positive ones.
    pub(crate) fn from_dense(weights: &[f64]) -> Result<Self> {
        let (indices, weights): (Vec<usize>, Vec<f64>) = weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, &w)| (i, w))
            .unzip();
        let total: f64 = weights.iter().sum();
        ConvexCombination::new(indices, weights.into_iter().map(|w| w / total).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices.iter().copied().zip(self.weights.iter().copied())
    }

    /// Rewrites local indices through `map`, e.g. from a selected subset back
    /// to the full input.
    pub fn reindex(&self, map: &[usize]) -> Self {
        ConvexCombination {
            indices: self.indices.iter().map(|&i| map[i]).collect(),
            weights: self.weights.clone(),
        }
    }
}

/// `sum_i w_i * originals[idx_i]`, the pre-image of a reduced-space convex
/// combination under a linear map.
pub fn recover(comb: &ConvexCombination, originals: &PointSet) -> Result<Point> {
    let mut out = vec![0.0; originals.dim()];
    for (i, w) in comb.iter() {
        if i >= originals.len() {
            return Err(Error::InvalidCombination(format!(
                "index {i} out of range for {} points",
                originals.len()
            )));
        }
        vector::axpy(w, originals.row(i), &mut out);
    }
    Ok(Point::from_vec_unchecked(out))
}

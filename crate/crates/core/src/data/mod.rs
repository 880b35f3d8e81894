//! Datasets: dense CSV and sparse labeled text loaders, synthetic Gaussian
//! blobs, and outlier injection with ground-truth bookkeeping.
//!
//! # Formats
//!
//! CSV: one point per line, comma-separated decimal reals, no header. With
//! `labeled = true` the last column is the label, which must read as `+1`,
//! `1` or `-1`. Blank lines are skipped; every other line must have the
//! column count of the first one.
//!
//! Sparse: one point per line as `label idx:value idx:value ...`,
//! whitespace-separated, indices 1-based and strictly increasing. Features
//! not listed are zero and every point is densified to the largest index
//! seen in the file. Text after `#` is ignored.

mod csv;
mod sparse;
mod synth;

pub use csv::{load_csv, parse_csv, write_csv};
pub use sparse::{load_sparse_labeled, parse_sparse};
pub use synth::{inject_ball_outliers, inject_far_side_outliers, inject_label_flip, synth_clusters, SynthSpec};

use crate::geometry::PointSet;
use crate::{Error, Result};

/// Points with optional `+1/-1` labels and cluster ids, plus the indices of
/// any injected outliers.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub points: PointSet,
    pub labels: Option<Vec<i8>>,
    pub cluster_ids: Option<Vec<usize>>,
    /// Where the data came from, e.g. a path or generator parameters.
    pub provenance: String,
    /// Ascending indices of points altered or added by injection.
    pub injected: Vec<usize>,
}

impl LabeledDataset {
    pub fn new(points: PointSet, labels: Option<Vec<i8>>, provenance: impl Into<String>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::param("labels", format!("{} labels for {} points", l.len(), points.len())));
            }
            if l.iter().any(|&x| x != 1 && x != -1) {
                return Err(Error::param("labels", "labels must be +1 or -1"));
            }
        }
        Ok(LabeledDataset {
            points,
            labels,
            cluster_ids: None,
            provenance: provenance.into(),
            injected: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }
}

/// Rows of one class with their indices in the full dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSplit {
    pub positive: PointSet,
    pub negative: PointSet,
    pub positive_index: Vec<usize>,
    pub negative_index: Vec<usize>,
}

/// Splits a labeled dataset into its `+1` and `-1` classes.
pub fn split_by_label(ds: &LabeledDataset) -> Result<ClassSplit> {
    let labels = ds.labels.as_ref().ok_or_else(|| Error::param("labels", "dataset is unlabeled"))?;
    let (pos, neg): (Vec<usize>, Vec<usize>) = (0..ds.len()).partition(|&i| labels[i] > 0);
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::Empty("one of the classes"));
    }
    Ok(ClassSplit {
        positive: ds.points.select(&pos)?,
        negative: ds.points.select(&neg)?,
        positive_index: pos,
        negative_index: neg,
    })
}

//! Dimension reduction with recovery for two robust optimization problems:
//! SVM with outliers and k-center clustering with outliers.
//!
//! Every pipeline follows the same three steps. The input is mapped to a
//! low-dimensional space with a Johnson–Lindenstrauss transform, a black-box
//! solver runs on the reduced instance, and the reduced solution is rewritten
//! as a sparse convex combination of reduced input points (Gilbert's algorithm
//! for margins, Bădoiu–Clarkson for balls). Because the transform is linear,
//! the same coefficients applied to the original points give a solution in the
//! original space.
//!
//! Module map:
//!
//! - [`geometry`]: points, metric primitives and exact brute-force oracles.
//! - [`jl`]: Gaussian, binary and fast (Walsh–Hadamard) projection maps and
//!   the recovery of convex combinations.
//! - [`hull`]: Gilbert's polytope-distance algorithm, its implicit
//!   Minkowski-difference variant and the Bădoiu–Clarkson MEB algorithm.
//! - [`svm`]: one-class and two-class SVM with outliers.
//! - [`kcenter`]: k-center clustering with outliers.
//! - [`data`]: loaders, synthetic generators and outlier injection.

pub mod data;
mod error;
pub mod geometry;
pub mod hull;
pub mod jl;
pub mod kcenter;
pub mod rng;
pub mod svm;
mod timing;

pub use error::{Error, Result};
pub use geometry::{Point, PointSet};
pub use timing::Timing;

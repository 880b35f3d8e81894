use crate::geometry::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate at position {position}")]
    NonFinite { position: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("oracle scale exceeded: {0}")]
    OracleScaleExceeded(String),

    #[error("triangle witness rejected: {0}")]
    InvalidWitness(String),

    #[error("invalid convex combination: {0}")]
    InvalidCombination(String),

    /// The origin lies in the convex hull, so the polytope distance is zero.
    #[error("zero polytope distance after {iterations} iterations (origin inside the hull)")]
    ZeroDistance { iterations: usize },

    /// The stopping rule did not hold within the iteration budget.
    #[error("iteration limit {limit} reached; best norm so far {best_norm}")]
    IterationLimit {
        limit: usize,
        best_norm: f64,
        best: Point,
    },

    #[error("instance is not separable: {0}")]
    NotSeparable(String),

    #[error("black box `{solver}` returned invalid output: {reason}")]
    BlackBox { solver: String, reason: String },

    #[error("parse error at line {line}, token {token}: {reason}")]
    Parse {
        line: usize,
        token: usize,
        reason: String,
    },

    #[error("map cannot be described by a seed: {0}")]
    NotDescribable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

use thiserror::Error;

/// Crate-wide error type. Search and catalog routines return these rather than
/// panicking so the CLI can surface precise diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("edge ({u}, {v}) is not a valid edge of K_{n}")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("coloring of K_{n} needs {expected} entries, got {got}")]
    ColorVectorLength { n: usize, expected: usize, got: usize },

    #[error("a complete graph needs at least {min} vertices here, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("vertex subset is invalid: {reason}")]
    InvalidSubset { reason: String },

    #[error("colorings live on different host graphs (n = {left} vs n = {right})")]
    HostMismatch { left: usize, right: usize },

    #[error("forest shape ({k}, {t}) is invalid: {reason}")]
    InvalidShape { k: usize, t: usize, reason: String },

    #[error("shape ({k}, {t}) needs {demand} vertices but the host has n = {n}")]
    ShapeTooLarge { k: usize, t: usize, demand: usize, n: usize },

    #[error("{what} is only supported up to n = {max}, got n = {n}")]
    ScaleLimit { what: &'static str, n: usize, max: usize },

    #[error("exhaustive search above n = {max} requires an explicit node budget")]
    BudgetRequired { max: usize },

    #[error("coloring has {classes} color classes, below the required {required}")]
    BelowThreshold { classes: usize, required: usize },

    #[error("mustInclude edges must be pairwise distinct in color; classes collide")]
    MustIncludeCollision,

    #[error(
        "dense-triple retention {retained} fell below the guaranteed bound {bound} \
         (this contradicts a proven inequality; please report the input)"
    )]
    RetentionBound { retained: usize, bound: usize },

    #[error("unknown crosscheck suite `{0}` (expected `base` or `extended`)")]
    UnknownSuite(String),

    #[error("malformed coloring file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

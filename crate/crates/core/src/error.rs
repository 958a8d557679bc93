use thiserror::Error;

/// Errors produced by symmkit operations.
#[derive(Debug, Error)]
pub enum SymmError {
    #[error("reflection in the hyperplane does not map the cell-center lattice to itself")]
    MisalignedHyperplane,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite value at cell {0}")]
    NonFinite(usize),

    #[error("invalid hyperplane: {0}")]
    InvalidHyperplane(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("segment {segment} has slope {slope}, which exceeds the Lipschitz bound 1")]
    NotAContraction { segment: usize, slope: f64 },

    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(String),

    #[error("monotone map decreases at breakpoint {0}")]
    NonMonotoneMap(usize),

    #[error("convex body has zero area")]
    DegenerateBody,

    #[error("column {column} is not a contiguous run")]
    NonConvexColumn { column: usize },

    #[error("image leaves the grid: {0}")]
    OutOfGrid(String),

    #[error("set is empty")]
    EmptySet,

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("not a rearrangement: {0}")]
    NotARearrangement(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("gallery verdicts deviate from the expected matrix: {0}")]
    GalleryMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = SymmError> = std::result::Result<T, E>;

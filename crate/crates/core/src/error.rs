use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("distance matrix is empty")]
    EmptySpace,

    #[error("distance matrix entry ({i}, {j}) is not a finite number")]
    NonFinite { i: usize, j: usize },

    #[error("diagonal entry ({i}, {i}) is not zero")]
    NonZeroDiagonal { i: usize },

    #[error("distance matrix is not symmetric at ({i}, {j})")]
    AsymmetricMatrix { i: usize, j: usize },

    #[error("off-diagonal entry ({i}, {j}) is not positive")]
    NegativeOrZeroOffDiagonal { i: usize, j: usize },

    #[error("triangle inequality fails: d({i},{j}) > d({i},{via}) + d({via},{j})")]
    TriangleViolation { i: usize, j: usize, via: usize },

    #[error("operation needs at least two points")]
    SinglePoint,

    #[error("eta = {eta} is below the 2-covering diameter {nabla}; no 2-covering exists")]
    EtaBelowNabla { eta: f64, nabla: f64 },

    #[error("{what}: instance size {size} exceeds the cap {cap}")]
    InstanceTooLarge { what: &'static str, size: usize, cap: usize },

    #[error("graph is disconnected; unreachable component: {component:?}")]
    Disconnected { component: Vec<String> },

    #[error("operation requires unit edge lengths (hop metric)")]
    NonUnitLengths,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid covering: {0}")]
    InvalidCovering(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParameters(String),

    #[error("interval [{lo}, {hi}] contains no admissible dimension value")]
    IntervalTooTight { lo: String, hi: String },

    #[error("geodesic family invalid for pair ({x}, {y}): {reason}")]
    FamilyInvalid { x: usize, y: usize, reason: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "E_NOT_SQUARE",
            Error::EmptySpace => "E_EMPTY",
            Error::NonFinite { .. } => "E_NON_FINITE",
            Error::NonZeroDiagonal { .. } => "E_NONZERO_DIAGONAL",
            Error::AsymmetricMatrix { .. } => "E_ASYMMETRIC",
            Error::NegativeOrZeroOffDiagonal { .. } => "E_NONPOSITIVE",
            Error::TriangleViolation { .. } => "E_TRIANGLE",
            Error::SinglePoint => "E_SINGLE_POINT",
            Error::EtaBelowNabla { .. } => "E_ETA_BELOW_NABLA",
            Error::InstanceTooLarge { .. } => "E_TOO_LARGE",
            Error::Disconnected { .. } => "E_DISCONNECTED",
            Error::NonUnitLengths => "E_NON_UNIT_LENGTHS",
            Error::InvalidGraph(_) => "E_INVALID_GRAPH",
            Error::InvalidCovering(_) => "E_INVALID_COVERING",
            Error::InvalidParameter(_) => "E_INVALID_PARAMETER",
            Error::InvalidFamilyParameters(_) => "E_INVALID_FAMILY",
            Error::IntervalTooTight { .. } => "E_INTERVAL_TOO_TIGHT",
            Error::FamilyInvalid { .. } => "E_FAMILY_INVALID",
            Error::Parse { .. } => "E_PARSE",
            Error::Internal(_) => "E_INTERNAL",
        }
    }
}

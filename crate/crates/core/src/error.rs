use thiserror::Error;

/// Errors raised by the decomposition engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |H - H*| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("{what} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { what: String, min_eigenvalue: f64 },

    #[error("dimension mismatch: {what} has dimension {found}, expected {expected}")]
    DimMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("dominating form check failed: {0}")]
    NotDominating(String),

    #[error("inconsistent numerical rank: {0}")]
    InconsistentRank(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("reference measure is not non-negative at atom {atom}")]
    NegativeReference { atom: String },

    #[error("invalid measure space: {0}")]
    InvalidSpace(String),

    #[error("decomposition routes disagree: {0}")]
    RouteMismatch(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NOT_SQUARE",
            Error::NonFinite { .. } => "NON_FINITE",
            Error::NotHermitian { .. } => "NOT_HERMITIAN",
            Error::NotPsd { .. } => "NOT_PSD",
            Error::DimMismatch { .. } => "DIM_MISMATCH",
            Error::NotDominating(_) => "NOT_DOMINATING",
            Error::InconsistentRank(_) => "INCONSISTENT_RANK",
            Error::Precondition(_) => "PRECONDITION",
            Error::InvalidTolerance(_) => "INVALID_TOLERANCE",
            Error::NegativeReference { .. } => "NEGATIVE_REFERENCE",
            Error::InvalidSpace(_) => "INVALID_SPACE",
            Error::RouteMismatch(_) => "ROUTE_MISMATCH",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

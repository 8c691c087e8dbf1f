use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("spec has no factors")]
    NoFactors,
    #[error("factor {index} has size {size}; complete-graph factors need at least 2 vertices")]
    FactorTooSmall { index: usize, size: usize },
    #[error("basis set is empty")]
    EmptyBasis,
    #[error("basis row {index} is the zero vector")]
    ZeroVector { index: usize },
    #[error("basis row {second} duplicates row {first}")]
    DuplicateVector { first: usize, second: usize },
    #[error("basis row {index} has length {found}, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("basis row {index} has entry {value} at position {position}; entries must be 0 or 1")]
    NotBinary {
        index: usize,
        position: usize,
        value: i64,
    },
    #[error("vertex coordinate {coord} out of range for factor {index} of size {size}")]
    VertexOutOfRange {
        index: usize,
        coord: usize,
        size: usize,
    },
    #[error("vertex index {index} out of range for {vertices} vertices")]
    IndexOutOfRange { index: usize, vertices: usize },
    #[error("graph has {vertices} vertices, above the size cap of {cap}")]
    SizeCap { vertices: usize, cap: usize },

    #[error("basis vector must be nonzero")]
    ZeroBasisVector,
    #[error("closed form hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("analytic paths disagree: max deviation {deviation:.3e} exceeds {tol:.1e}")]
    PathDisagreement { deviation: f64, tol: f64 },
    #[error("series did not converge within {terms} terms")]
    SeriesDidNotConverge { terms: usize },
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid time {0:?}: expected a fraction p/q meaning p·π/q")]
    InvalidTime(String),

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeCap { .. } => 3,
            Error::NotUnitary { .. } | Error::PathDisagreement { .. } => 2,
            Error::AtLine { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

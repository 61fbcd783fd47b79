use thiserror::Error;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid bidiagonal decomposition: {0}")]
    InvalidBd(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("floating-point overflow in {0}")]
    Overflow(&'static str),

    #[error("floating-point underflow in {0}")]
    Underflow(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not (nonsingular) totally nonnegative: {0}")]
    NotTotallyNonnegative(String),

    #[error("nodes are not strictly increasing at index {0}")]
    NodesNotSorted(usize),

    #[error("negative node {0}")]
    NegativeNode(f64),

    #[error("nodes x[{i}] + y[{j}] is not positive")]
    SingularPair { i: usize, j: usize },

    #[error("bad range: need 0 < lo <= hi finite, got lo={lo}, hi={hi}")]
    BadRange { lo: f64, hi: f64 },

    #[error("duplicate nodes at indices {0} and {1}")]
    DuplicateNodes(usize, usize),

    #[error("no convergence after {0} steps")]
    NoConvergence(usize),

    #[error("reduction produced a negative intermediate ({0}); this is a bug")]
    ReductionFailure(String),

    #[error("not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is singular to working precision (pivot column {0})")]
    SingularToWorkingPrecision(usize),

    #[error("oracle precision not reached after {0} bits")]
    PrecisionNotReached(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("{0}")]
    Usage(String),

    #[error("acceptance gate failed: {0}")]
    GateFailure(String),
}

impl Error {
    /// Process exit code used by the `tnla` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::DimensionMismatch { .. } => 2,
            Error::Parse { .. } | Error::Io(_) => 3,
            Error::GateFailure(_) => 5,
            _ => 4,
        }
    }

    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

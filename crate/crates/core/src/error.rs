use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator `{name}` is not Hermitian (max |M - M^dagger| = {residual:e})")]
    NotHermitian { name: String, residual: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("span does not close under commutation: [{left}, {right}] residual {residual:e}")]
    NotClosed {
        left: String,
        right: String,
        residual: f64,
    },

    #[error("generators are linearly dependent (Gram condition number {condition:e})")]
    DependentGenerators { condition: f64 },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("missing value for parameter `{0}`")]
    MissingParameter(String),

    #[error("parameter `{0}` drives more than one circuit factor")]
    DuplicateParameter(String),

    #[error("finite-difference step {0:e} outside [1e-6, 1e-2]")]
    StepOutOfRange(f64),

    #[error("metric tensors differ in {0}")]
    PointMismatch(String),

    #[error("grid has no nodes")]
    EmptyGrid,

    #[error("grid needs at least {needed} nodes along `{parameter}`, has {actual}")]
    InsufficientGrid {
        parameter: String,
        needed: usize,
        actual: usize,
    },

    #[error("section ({0}, {1}) is degenerate at the requested point (det = {2:e})")]
    DegenerateSection(String, String, f64),

    #[error("invalid spin {0}: 2s must be a positive integer")]
    InvalidSpin(f64),

    #[error("state normalization off by {0:e}")]
    BadNormalization(f64),

    #[error("unsupported model variant: {0}")]
    BadVariant(String),

    #[error("Fock truncation {truncation} too small for level {level}")]
    TruncationTooSmall { level: usize, truncation: usize },

    #[error("evolution leaks out of the invariant subspace (max element {0:e})")]
    SubspaceLeak(f64),

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("{0}")]
    Parse(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 2 for malformed input or usage, 1 for everything
    /// that parsed but failed on its own terms.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::MissingParameter(_)
            | Error::DuplicateParameter(_)
            | Error::UnknownGenerator(_)
            | Error::UnknownModel(_)
            | Error::StepOutOfRange(_)
            | Error::EmptyGrid
            | Error::InvalidSpin(_)
            | Error::BadVariant(_) => 2,
            _ => 1,
        }
    }
}

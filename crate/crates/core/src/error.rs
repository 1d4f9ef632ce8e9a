use thiserror::Error;

/// Errors produced by the estimation and experiment routines.
#[derive(Debug, Error)]
pub enum GarchError {
    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sample too short: n = {n}, at least {min} observations required")]
    SampleTooShort { n: usize, min: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("model is not second-order stationary (persistence {persistence})")]
    Nonstationary { persistence: f64 },

    #[error("matrix is singular or ill-conditioned (condition number {condition:e})")]
    Singular { condition: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("optimizer did not converge after {iterations} iterations")]
    NotConverged { iterations: usize },

    #[error("too few usable replicates: {got} available, {need} required")]
    TooFewReplicates { got: usize, need: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl GarchError {
    /// True for errors caused by the content of input data rather than by
    /// the request itself.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            GarchError::Parse { .. } | GarchError::DegenerateData(_) | GarchError::Io(_) | GarchError::Csv(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, GarchError>;

use std::path::PathBuf;

/// Failures reported by the solvers, the spectral code and the file readers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("amplitude {amplitude} is outside the smooth family (|a| must stay below {limit})")]
    RangeViolation { amplitude: f64, limit: f64 },

    #[error("Newton iteration did not converge after {iterations} steps (last increment {last_increment:e})")]
    NoConvergence { iterations: usize, last_increment: f64 },

    #[error("spectral tail too small at n = {mode}: |A_n| = {magnitude:e}, the coefficients are aliased")]
    AliasingFailure { mode: usize, magnitude: f64 },

    #[error("validity condition violated: {0}")]
    ValidityViolation(String),

    #[error("argument has nonzero mean {mean:e}; the antiderivative is undefined")]
    MeanNonzero { mean: f64 },

    #[error("dense eigensolver failed: {0}")]
    EigensolverFailure(String),

    #[error("band identification failed at kappa = {kappa}: eigenvalue gap {gap:e}")]
    BandMisidentification { kappa: f64, gap: f64 },

    #[error("the reference combination is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NoPositiveReference { min_eigenvalue: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short variant name, printed by the command line tool on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::RangeViolation { .. } => "RangeViolation",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::AliasingFailure { .. } => "AliasingFailure",
            Error::ValidityViolation(_) => "ValidityViolation",
            Error::MeanNonzero { .. } => "MeanNonzero",
            Error::EigensolverFailure(_) => "EigensolverFailure",
            Error::BandMisidentification { .. } => "BandMisidentification",
            Error::NoPositiveReference { .. } => "NoPositiveReference",
            Error::Unsupported(_) => "Unsupported",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

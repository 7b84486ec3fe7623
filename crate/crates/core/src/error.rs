use thiserror::Error;

/// Errors raised by constructors, measures and the numerical drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("overlap must be < 1 and >= 0, got {0}")]
    InvalidOverlap(f64),

    #[error("quasi-Bell index must be 1, 2, 3 or 4, got {0}")]
    InvalidIndex(u8),

    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("transmissivity must lie in [0, 1], got {0}")]
    InvalidTransmissivity(f64),

    #[error("invalid amplitude: {0}")]
    InvalidAmplitude(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("maximizer did not converge: {message} (best value {best_value})")]
    NonConvergence { message: String, best_value: f64 },

    #[error("truncation {truncation} is below the adequacy rule (needs >= {required})")]
    TruncationTooSmall { truncation: usize, required: usize },

    #[error("truncation overflow: tail mass {tail_mass:e} exceeds {tolerance:e}; increase the truncation")]
    TruncationOverflow { tail_mass: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight mismatch: expected {expected}, got {actual}")]
    WeightMismatch { expected: usize, actual: usize },

    #[error("partition {partition} has more than {max_parts} parts")]
    TooManyParts { partition: String, max_parts: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("N = {grid} does not make N·λ integral; the smallest valid N is {minimal}")]
    NonIntegralGrid { grid: usize, minimal: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),

    #[error("linearization left a nonzero residual with {0} terms")]
    NonzeroResidual(usize),
}

impl Error {
    /// Errors caused by bad user input, as opposed to numerical failures.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::NoConvergence(_) | Error::NonzeroResidual(_))
    }
}

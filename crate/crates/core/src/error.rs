use thiserror::Error;

/// Errors raised by the kernels and solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Input violates a precondition (empty dimension, non-finite entries,
    /// non-self-adjoint matrix, bad configuration).
    #[error("rejected input: {0}")]
    InvalidInput(&'static str),

    /// The input collapses the iteration, e.g. a zero matrix or a start
    /// vector in the kernel.
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("numeric overflow: {0}")]
    Overflow(&'static str),

    #[error("no convergence after {0} sweeps")]
    NoConvergence(usize),
}

impl Error {
    /// Dimension and precondition failures.
    pub fn is_rejected_input(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. } | Error::InvalidInput(_)
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

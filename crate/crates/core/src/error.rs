use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature hit its subdivision budget before reaching the tolerance.
    #[error("quadrature did not converge: estimated error {achieved:e} exceeds tolerance {tol:e}")]
    Quadrature { achieved: f64, tol: f64 },

    /// A root-finding bracket does not enclose a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// An iterative method exhausted its iteration cap.
    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// The requested operation is not available for this profile or configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::NoSignChange { .. } | Error::IterationCap(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the numerical and counting routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (partial value {partial}, error estimate {err_est})")]
    QuadratureNoConvergence {
        partial: f64,
        err_est: f64,
        subdivisions: usize,
    },

    #[error("step size underflow at x = {x} (stiff or blowing-up system)")]
    StepUnderflow { x: f64 },

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("value overflows the representable range: {0}")]
    Overflow(String),

    #[error("Painleve II integration left the Hastings-McLeod branch at zeta = {zeta}")]
    BranchLost { zeta: f64 },

    #[error("regime-boundary evaluation: {0}")]
    RegimeBoundary(String),

    #[error("enumeration failed: {0}")]
    Enumeration(String),

    #[error("no root found: {0}")]
    NoRoot(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

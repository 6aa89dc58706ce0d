//! Error type shared across the crate.

use crate::gmres::IterationReport;

/// Errors produced by construction, application, and solver routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar parameter is outside its mathematical domain.
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    /// Vector or matrix dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A dense materialization was requested above the configured cap.
    #[error("dense size cap exceeded: {requested} unknowns > cap {cap}")]
    SizeCap { requested: usize, cap: usize },

    /// An operator that must be invertible is (numerically) singular.
    #[error("singular operator: {0}")]
    SingularOperator(String),

    /// A non-finite value appeared where finite arithmetic was required.
    #[error("numeric breakdown: {0}")]
    NumericBreakdown(String),

    /// An implicit time step did not converge; the inner solver report is attached.
    #[error("time step {step} did not converge after {} iterations", report.iterations)]
    StepFailure {
        step: usize,
        report: IterationReport,
    },

    /// Invalid command-line or configuration input.
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

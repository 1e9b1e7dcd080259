use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {dim} for {what}")]
    InvalidDimension { what: &'static str, dim: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("trace {trace} differs from one")]
    TraceNotUnit { trace: f64 },

    #[error("positivity violated: eigenvalue {min_eigenvalue:e} below tolerance")]
    Positivity { min_eigenvalue: f64 },

    #[error("mediator dimension {dim_c} unsupported; this coupling needs a qubit mediator")]
    UnsupportedMediator { dim_c: usize },

    #[error("integrator failure at t = {time}: minimum eigenvalue {min_eigenvalue:e}")]
    IntegratorFailure { time: f64, min_eigenvalue: f64 },

    #[error("truncation at dimension {dim} not converged (relative difference {relative_difference:e})")]
    Truncation { dim: usize, relative_difference: f64 },

    #[error("Lindblad step not converged at {substeps} substeps per sample (max change {max_change:e})")]
    StepConvergence { substeps: usize, max_change: f64 },

    #[error("negative radicand {radicand:e} outside numerical domain")]
    NumericalDomain { radicand: f64 },

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Failures of the numerics itself, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Positivity { .. }
                | Error::IntegratorFailure { .. }
                | Error::Truncation { .. }
                | Error::StepConvergence { .. }
                | Error::NumericalDomain { .. }
                | Error::Eigen(_)
        )
    }
}

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared by every module in the crate.
///
/// The variants mirror the failure classes of the public operations:
/// shape violations, Hermiticity violations, inputs rejected by a
/// precondition, representations whose numerical content is inconsistent,
/// character data that cannot come from a genuine representation, and
/// integrator step-control violations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("malformed representation: {0}")]
    MalformedRep(String),

    #[error("inconsistent character data: {0}")]
    InconsistentCharacter(String),

    #[error("step-control violation: dt*|rate| = {product:.3e} exceeds {limit}")]
    StepControl { product: f64, limit: f64 },
}

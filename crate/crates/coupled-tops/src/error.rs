//! Crate-wide error type.
//!
//! Numerical routines distinguish caller mistakes (bad dimensions, invalid
//! parameters) from genuine numerical failures (an iteration that did not
//! converge, a quadrature too coarse to be trusted). Callers that drive
//! sweeps use this split to decide between aborting and recording a failed
//! row.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller-supplied parameter or operand is outside the documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Vector length does not match the operator dimension.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A dense matrix of this size is not allowed; use the matrix-free path.
    #[error("dimension {dim} exceeds the dense cap {max}")]
    DenseCapExceeded { dim: usize, max: usize },

    /// An iterative eigensolve stopped without meeting its residual target.
    #[error(
        "eigensolver did not converge after {iterations} iterations \
         (best residual {best_residual:.3e})"
    )]
    NonConvergence {
        iterations: usize,
        best_residual: f64,
    },

    /// The QL iteration failed on one tridiagonal sub-block.
    #[error("QL iteration exceeded {max_iter} shifts for eigenvalue index {index}")]
    QlNoConvergence { index: usize, max_iter: usize },

    /// A density matrix failed a hard validity check.
    #[error("density matrix invalid: {0}")]
    InvalidDensityMatrix(String),

    /// Classical state violates the unit-sphere constraint.
    #[error("|L{site}| = {norm} violates the unit-sphere constraint")]
    ConstraintViolation { site: u8, norm: f64 },

    /// The canonical chart (phi, z) is singular at the poles z = +/-1.
    #[error("canonical chart singular at z{site} = {z}")]
    ChartSingularity { site: u8, z: f64 },

    /// The supplied state is not an equilibrium of the flow.
    #[error("flow norm {flow_norm:.3e} at the supplied point exceeds {limit:.1e}; not a fixed point")]
    NotAFixedPoint { flow_norm: f64, limit: f64 },

    /// Phase-space quadrature failed its normalization self-check.
    #[error(
        "quadrature too coarse: integral of Q came out {q_norm} \
         (must be within {limit} of 1)"
    )]
    QuadratureTooCoarse { q_norm: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

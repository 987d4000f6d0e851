//! Crate-wide error type.

use crate::expr::{EvalError, ParseError};

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Expression source could not be parsed.
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    /// Expression evaluation hit a domain fault (sqrt/log of a negative
    /// number, division by zero, ...).
    #[error("evaluation error: {0}")]
    Eval(#[from] EvalError),

    /// Chart is not an immersion at the sampled point: W² = EG − F² ≤ 0.
    #[error("degenerate chart at ({u}, {v}): W^2 = {w2:.3e}")]
    DegenerateChart { u: f64, v: f64, w2: f64 },

    /// A direction vector must be nonzero.
    #[error("zero direction vector")]
    ZeroVector,

    /// Implicit solve for the ruling parameter failed.
    #[error("implicit solve failed at (x, y) = ({x}, {y}): {msg}")]
    ImplicitSolve { x: f64, y: f64, msg: String },

    /// Iterative solver ran out of iterations.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// Linear system inside the Newton step is singular.
    #[error("singular Jacobian in Newton step {step}")]
    SingularJacobian { step: usize },

    /// A computation produced NaN or infinity.
    #[error("non-finite value in {context}")]
    NonFinite { context: String },

    /// Invalid argument to a library entry point.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Report output could not be written.
    #[error("io error writing {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn non_finite(context: impl Into<String>) -> Self {
        Error::NonFinite {
            context: context.into(),
        }
    }
}

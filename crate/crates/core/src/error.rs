use alloc::string::String;

use crate::matrix::C64;

/// Errors produced by the fitters, evaluators and kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Invalid input parameters (ranges, counts, collisions, shapes).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A caller violated a documented contract (e.g. mismatched dimensions).
    #[error("contract error: {0}")]
    Contract(String),
    /// A numerical kernel failed (non-convergence, singular pencil).
    #[error("numerical error: {0}")]
    Numerical(String),
    /// A model could not be evaluated at `z`.
    #[error("evaluation error at z = {re:e}{im:+e}i: {reason}", re = z.re, im = z.im)]
    Evaluation { z: C64, reason: String },
    /// Pole relocation produced no usable polynomial.
    #[error("relocation error: {0}")]
    Relocation(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn eval_err(z: C64, reason: impl Into<String>) -> Error {
    Error::Evaluation {
        z,
        reason: reason.into(),
    }
}

//! Rational approximation of matrix-valued functions sampled on discrete
//! sets in the complex plane.
//!
//! The crate is `no_std` (it needs `alloc`). It provides barycentric forms
//! with scalar and matrix weights, the AAA family (scalar, set-valued,
//! surrogate and block-AAA), vector fitting, RKFIT-style pole relocation,
//! the Loewner framework and a linearization of barycentric numerators for
//! nonlinear eigenvalue problems.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod kernels;
pub mod matrix;
pub mod sample;
pub mod barycentric;
pub mod fit;
pub mod aaa;
pub mod block_aaa;
pub mod linearize;
pub mod vecfit;
pub mod rkfit;
pub mod loewner;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use fit::Fit;
pub use matrix::{c64, CMat, C64};
pub use sample::{Evaluator, SampleSet};

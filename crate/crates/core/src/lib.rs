//! Entanglement of two-mode Gaussian states in standard form.
//!
//! Covariance matrices use the quadrature order `(x1, p1, x2, p2)` with
//! vacuum variance 1, so the vacuum is the identity matrix. Squeezing
//! parameters are natural-log scale and entanglement values are in ebits.

// Negated comparisons are used on purpose so that NaN inputs fail the checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod decomp;
pub mod error;
pub mod experiments;
pub mod gstate;
pub mod measures;
pub mod optim;
pub mod oracle;
pub mod records;
pub mod sampler;

pub use error::{Error, Result};
pub use gstate::{CovMatrix, SqueezeParams, StandardForm, SymplecticOp};

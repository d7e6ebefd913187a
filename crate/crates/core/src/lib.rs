//! Riesz means of spectral measures and the exact coefficient algebra linking
//! heat-kernel and cylinder-kernel asymptotic expansions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod appendix_identities;
pub mod coeff_transforms;
pub mod error;
pub mod exact_scalar;
pub mod green_functions;
pub mod models;
pub mod quadrature;
pub mod riesz_engine;

pub use error::{Error, Result};
pub use exact_scalar::{ExactScalar, Rational};

//! Computer-assisted positivity proofs for solutions of −Δu = f(u) with
//! homogeneous Dirichlet data, built on outward-rounded interval arithmetic.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tests compare against reference decimal brackets and long oracle literals.
#![cfg_attr(test, allow(clippy::approx_constant, clippy::excessive_precision))]

pub mod certify;
pub mod constants;
pub mod error;
pub mod field;
pub mod formats;
pub mod interval;
pub mod nk;
pub mod special;
pub mod tables;
pub mod text;

pub use error::{Error, Result};
pub use interval::Interval;

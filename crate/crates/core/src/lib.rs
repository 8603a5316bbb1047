//! Exact series solutions of the insulated and perfect conductivity
//! problems on a concentric spherical shell `r0 < |x| < r0 + eps` in R^d,
//! together with the numerical machinery that checks them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod boundary_data;
pub mod sphere_basis;
pub mod exact_solutions;
pub mod oracle;
pub mod experiments;
pub mod cli;

pub use error::{Error, Result};

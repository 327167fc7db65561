//! Cotype zeta functions of rank-3 Lie rings over the integers.
//!
//! The crate computes local cotype zeta factors in closed form, checks them
//! against a brute-force enumeration of sublattices, verifies functional
//! equations and Igusa point counts, and evaluates corank densities from the
//! resulting Euler products.

pub mod error;
pub mod ratfun;

pub use error::{Error, Result};
pub mod liealg;
pub mod mat;
pub mod arith;
pub mod igusa;
pub mod cotype;
pub mod oracle;
pub mod euler;

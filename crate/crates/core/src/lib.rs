//! Lattice-point visibility along polynomial lines of sight.
//!
//! A point `(a, h)` with positive coordinates is visible along `F` when
//! `t = h / F(a)` makes `a` the least positive `u` with `t F(u)` a positive
//! integer. The crate provides an exact oracle for that definition, a
//! column sieve that classifies whole boxes `[1, N]^2`, the gcd-sum and
//! curve-point machinery that bounds the invisible count for `F = f^m`, and
//! reference densities for comparison.

pub mod curves;
pub mod densities;
pub mod error;
pub mod gcd_sums;
pub mod poly_core;
pub mod rational;
mod values;
pub mod visibility;

pub use error::{Error, Result};
pub use poly_core::{IntPoly, SightLine};

//! Exact arithmetic for the Fabius function.
//!
//! The Fabius function `F` is the unique solution of the delay equation
//! `F'(x) = 2 F(2x)` with `F(0) = 0` and `F(1) = 1`; it is smooth,
//! nowhere analytic, and takes rational values at every dyadic point.
//! This crate computes those values exactly, exposes the integer and
//! rational sequences that govern them, and verifies their arithmetic
//! properties (integrality, parity, 2-adic valuations, denominator
//! structure) over machine-checkable ranges.
//!
//! Modules:
//! - [`arith`]: the arithmetic kernel — exact rationals, binomials,
//!   double factorials, Bernoulli numbers, bit-counting helpers.
//! - [`sequences`]: the coefficient sequences `c_n`, `d_n` and their
//!   integer normalizations `F_n`, `G_n`, `R_n`, with two independent
//!   computation routes (standard and Bernoulli-based recurrences).
//! - [`eval`]: evaluation of `F` and of the compactly supported `up`
//!   function — exact at dyadic points, guaranteed-error elsewhere.
//! - [`denominators`]: common denominators of the level-`n` dyadic
//!   values, their divisor bound, and the odd-part conjecture scan.
//! - [`audit`]: verification suites that re-check every theorem through
//!   the public API and report pass/fail with the minimal failing index.
//! - [`cli`]: the `fabius` command-line front end.

pub mod arith;
pub mod audit;
pub mod cli;
pub mod denominators;
pub mod error;
pub mod eval;
pub mod sequences;

pub use arith::ExactRational;
pub use error::Error;
pub use sequences::SequenceCache;

/// Shorthand for results with the crate-wide error type.
pub type Result<T> = std::result::Result<T, Error>;

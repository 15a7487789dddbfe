//! Exact-arithmetic invariants of formal tensor fields on a line.
//!
//! The crate computes the invariant polynomials P_mk attached to the
//! action of the automorphism groups G_n on spaces of formal tensor
//! fields, by three independent constructions (generating function,
//! partition sum, determinant), implements the group and Lie-algebra
//! actions whose invariants they are, the fractional-residue pipeline,
//! positive-characteristic invariants (width, Lucas congruences) and the
//! QFT recursion identity.
//!
//! All arithmetic is exact: arbitrary-precision rationals, prime fields
//! F_p, or the rational-function field F_p(c). The containers
//! ([`series::TruncatedSeries`], [`poly::MultiPoly`]) are generic over
//! the scalar through [`scalar::ExactScalar`]; the aliases below fix the
//! concrete instantiations used throughout.

pub mod action;
pub mod charp;
pub mod cli;
pub mod error;
pub mod pmk;
pub mod poly;
pub mod qft;
pub mod report;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

/// Arbitrary-precision rational.
pub type Rat = scalar::Rat;
/// Arbitrary-precision integer.
pub type Int = scalar::Int;
/// Prime-field element with runtime modulus.
pub type Fp = scalar::Fp;
/// Element of the rational-function field F_p(c).
pub type RatFunc = scalar::RatFunc;

/// Sparse multivariate polynomial over the rationals.
pub type RatPoly = poly::MultiPoly<Rat>;
/// Sparse multivariate polynomial over F_p.
pub type FpPoly = poly::MultiPoly<Fp>;

/// Truncated Laurent series over the rationals.
pub type RatSeries = series::TruncatedSeries<Rat>;
/// Truncated Laurent series over F_p.
pub type FpSeries = series::TruncatedSeries<Fp>;
/// Truncated Laurent series over F_p(c).
pub type FuncSeries = series::TruncatedSeries<RatFunc>;
/// Series in z with polynomial coefficients (generating functions).
pub type PolySeries = series::TruncatedSeries<RatPoly>;

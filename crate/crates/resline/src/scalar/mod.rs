//! Exact coefficient arithmetic: rationals, prime fields, rational
//! functions over prime fields, and small number-theoretic helpers.
//!
//! Everything here is exact; there is no floating point anywhere in the
//! crate. The [`ExactScalar`] trait is the coefficient interface used by
//! the series and polynomial containers, so the same code runs over Q,
//! F_p and F_p(c).

pub mod fp;
pub mod ratfunc;

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub use fp::Fp;
pub use ratfunc::{RatFunc, UniPoly};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (enforced by `num`).
pub type Rat = BigRational;
/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Element of an exact coefficient field.
///
/// Implementors carry whatever context they need (a prime-field element
/// knows its modulus), and identity elements produced by [`Zero`]/[`One`]
/// unify with that context on first contact.
pub trait ExactScalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse. Errors on zero.
    fn inv(&self) -> Result<Self>;

    /// Embed a rational number into the field, using `self` as context
    /// (e.g. for the modulus). Errors when the denominator is not
    /// invertible in the field.
    fn embed_rat(&self, r: &Rat) -> Result<Self>;

    /// Embed a machine integer, using `self` as context.
    fn embed_int(&self, n: i64) -> Result<Self> {
        self.embed_rat(&Rat::from_integer(Int::from(n)))
    }

    /// Exact division. Errors on division by zero.
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }
}

impl ExactScalar for Rat {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn embed_rat(&self, r: &Rat) -> Result<Self> {
        Ok(r.clone())
    }
}

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Falling factorial alpha (alpha - 1) ... (alpha - len + 1).
pub fn falling_factorial(alpha: &Rat, len: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..len {
        acc *= alpha - rat_int(i as i64);
    }
    acc
}

/// Generalized binomial coefficient with rational upper argument:
/// alpha (alpha - 1) ... (alpha - j + 1) / j!.
pub fn rat_binomial(alpha: &Rat, j: u32) -> Rat {
    let mut fact = Int::one();
    for i in 1..=j {
        fact *= Int::from(i);
    }
    falling_factorial(alpha, j) / Rat::from_integer(fact)
}

/// Double factorial n(n-2)(n-4)... down to 1 or 2; by convention
/// (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> Int {
    assert!(n >= -1, "double factorial needs n >= -1");
    let mut acc = Int::one();
    let mut m = n;
    while m > 1 {
        acc *= Int::from(m);
        m -= 2;
    }
    acc
}

/// Number of 1-bits in the binary expression of k.
pub fn binary_digit_sum(k: u64) -> u32 {
    assert!(k >= 1, "binary digit sum needs k >= 1");
    k.count_ones()
}

/// p-adic valuation of a nonzero integer.
pub fn padic_valuation(m: i64, p: u64) -> u32 {
    assert!(m != 0, "valuation of zero is infinite");
    let p = p as i64;
    let mut m = m.abs();
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

/// Least common multiple of the coefficient denominators of an iterator
/// of rationals.
pub fn denominator_lcm<'a>(coeffs: impl Iterator<Item = &'a Rat>) -> Int {
    let mut acc = Int::one();
    for c in coeffs {
        let d = c.denom().abs();
        let g = num::Integer::gcd(&acc, &d);
        acc = acc / g * d;
    }
    acc
}

//! Prime field F_p with a runtime modulus.
//!
//! Identity elements from `Zero`/`One` carry modulus 0 ("not yet attached")
//! and adopt the modulus of the first real element they meet; this keeps
//! the generic containers usable without threading the modulus through
//! every constructor.

use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactScalar, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

/// Equal values with compatible moduli; a detached element (modulus 0,
/// value read as a signed integer) is reduced before comparing.
impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.modulus, other.modulus) {
            (0, 0) => self.value == other.value,
            (0, m) => Fp::from_i64(self.value as i64, m).value == other.value,
            (m, 0) => Fp::from_i64(other.value as i64, m).value == self.value,
            (m, n) => m == n && self.value == other.value,
        }
    }
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        let mut v = value % m;
        if v < 0 {
            v += m;
        }
        Fp::new(v as u64, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Reduce a big rational mod p; the denominator must be prime to p.
    pub fn from_rat(r: &Rat, modulus: u64) -> Result<Self> {
        let p = num::BigInt::from(modulus);
        let numer = ((r.numer() % &p) + &p) % &p;
        let denom = ((r.denom() % &p) + &p) % &p;
        let n: u64 = numer.try_into().expect("reduced residue fits u64");
        let d: u64 = denom.try_into().expect("reduced residue fits u64");
        if d == 0 {
            return Err(Error::InexactDivision(format!(
                "denominator {} not invertible mod {}",
                r.denom(),
                modulus
            )));
        }
        Ok(Fp::new(n, modulus) * ExactScalar::inv(&Fp::new(d, modulus))?)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp {
            value: 1,
            modulus: self.modulus,
        };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Reduce a detached element (a small signed integer) into F_m.
    fn attach(self, m: u64) -> Fp {
        if self.modulus == 0 {
            Fp::from_i64(self.value as i64, m)
        } else {
            assert_eq!(self.modulus, m, "mixed prime-field moduli");
            self
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        match (self.modulus, rhs.modulus) {
            (0, 0) => Fp {
                value: (self.value as i64).wrapping_add(rhs.value as i64) as u64,
                modulus: 0,
            },
            (0, m) | (m, 0) => {
                let a = self.attach(m);
                let b = rhs.attach(m);
                Fp::new(a.value + b.value, m)
            }
            (m, n) => {
                assert_eq!(m, n, "mixed prime-field moduli");
                Fp::new(self.value + rhs.value, m)
            }
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            return Fp {
                value: (self.value as i64).wrapping_neg() as u64,
                modulus: 0,
            };
        }
        Fp::new(self.modulus - self.value % self.modulus, self.modulus)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        match (self.modulus, rhs.modulus) {
            (0, 0) => Fp {
                value: (self.value as i64).wrapping_mul(rhs.value as i64) as u64,
                modulus: 0,
            },
            (0, m) | (m, 0) => {
                let a = self.attach(m);
                let b = rhs.attach(m);
                let prod = (a.value as u128 * b.value as u128) % m as u128;
                Fp {
                    value: prod as u64,
                    modulus: m,
                }
            }
            (m, n) => {
                assert_eq!(m, n, "mixed prime-field moduli");
                let prod = (self.value as u128 * rhs.value as u128) % m as u128;
                Fp {
                    value: prod as u64,
                    modulus: m,
                }
            }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value as i64)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

impl ExactScalar for Fp {
    fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.modulus == 0 {
            let v = self.value as i64;
            assert!(
                v == 1 || v == -1,
                "cannot invert a detached constant other than +-1"
            );
            return Ok(*self);
        }
        // Fermat: the modulus is prime by construction.
        Ok(self.pow(self.modulus - 2))
    }

    fn embed_rat(&self, r: &Rat) -> Result<Self> {
        assert!(
            self.modulus != 0,
            "embedding a rational needs an attached modulus"
        );
        Fp::from_rat(r, self.modulus)
    }
}

/// Probable-prime check, adequate for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = Fp::new(a % n, n).pow(d);
        if x.value() == 1 || x.value() == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x;
            if x.value() == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identities_unify_with_context() {
        let a = Fp::new(3, 7);
        assert_eq!(Fp::zero() + a, a);
        assert_eq!(Fp::one() * a, a);
        assert_eq!(a - a, Fp::new(0, 7));
    }

    #[test]
    fn inverse_round_trip() {
        for p in [2u64, 3, 5, 7, 11, 101] {
            for v in 1..p.min(20) {
                let x = Fp::new(v, p);
                assert_eq!(x * ExactScalar::inv(&x).unwrap(), Fp::new(1, p));
            }
        }
    }

    #[test]
    fn frobenius_additivity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5, 7, 11, 13] {
            for _ in 0..50 {
                let a = Fp::new(rng.gen_range(0..p), p);
                let b = Fp::new(rng.gen_range(0..p), p);
                assert_eq!((a + b).pow(p), a.pow(p) + b.pow(p));
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(7) && is_prime(1_000_003));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(1_000_001));
    }

    proptest! {
        #[test]
        fn field_axioms_mod_p(a in 0u64..97, b in 0u64..97, c in 0u64..97) {
            let p = 97;
            let (x, y, z) = (Fp::new(a, p), Fp::new(b, p), Fp::new(c, p));
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x * y, y * x);
            if !x.is_zero() {
                prop_assert_eq!(x * ExactScalar::inv(&x).unwrap(), Fp::new(1, p));
            }
        }
    }
}

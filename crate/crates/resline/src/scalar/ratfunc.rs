//! The rational-function field F_p(c): reduced fractions of dense
//! univariate polynomials over F_p with a monic denominator.
//!
//! This is the smallest imperfect field, used for the series that has no
//! polynomial normal form.

use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactScalar, Fp, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial over F_p in the variable `c`.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly {
    /// Coefficients by ascending degree; no trailing zeros.
    coeffs: Vec<Fp>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Fp>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Fp) -> Self {
        UniPoly::new(vec![c])
    }

    /// The variable c itself.
    pub fn gen(modulus: u64) -> Self {
        UniPoly::new(vec![Fp::new(0, modulus), Fp::new(1, modulus)])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().copied()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeff(&self, i: usize) -> Fp {
        self.coeffs.get(i).copied().unwrap_or_else(Fp::zero)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::new(vec![Fp::one()]);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.clone() * base.clone();
            }
            base = base.clone() * base.clone();
            exp >>= 1;
        }
        acc
    }

    fn monic(&self) -> (UniPoly, Fp) {
        match self.leading() {
            None => (self.clone(), Fp::one()),
            Some(l) => {
                let li = ExactScalar::inv(&l).expect("nonzero leading coefficient");
                let scaled = UniPoly::new(self.coeffs.iter().map(|c| *c * li).collect());
                (scaled, l)
            }
        }
    }

    /// Euclidean division: (quotient, remainder).
    fn div_rem(&self, rhs: &UniPoly) -> (UniPoly, UniPoly) {
        let d = rhs.degree().expect("division by zero polynomial");
        let lead_inv = ExactScalar::inv(&rhs.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Fp::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1;
            let q = rem[k] * lead_inv;
            if !q.is_zero() {
                quo[k - d] = q;
                for (i, c) in rhs.coeffs.iter().enumerate() {
                    rem[k - d + i] = rem[k - d + i] - q * *c;
                }
            }
            rem.pop();
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic().0
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        self + (-rhs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Fp::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        UniPoly::new(out)
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.value())?,
                1 if c.is_one() => write!(f, "c")?,
                1 => write!(f, "{}*c", c.value())?,
                _ if c.is_one() => write!(f, "c^{}", i)?,
                _ => write!(f, "{}*c^{}", c.value(), i)?,
            }
        }
        Ok(())
    }
}

/// Reduced fraction of univariate polynomials over F_p; the denominator
/// is monic and coprime to the numerator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = UniPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let (den, lead) = den.monic();
        let lead_inv = ExactScalar::inv(&lead).unwrap();
        let num = UniPoly::new(num.coeffs.iter().map(|c| *c * lead_inv).collect());
        RatFunc { num, den }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::new(vec![Fp::one()]),
        }
    }

    /// The transcendental generator c of F_p(c).
    pub fn gen(modulus: u64) -> Self {
        RatFunc::from_poly(UniPoly::gen(modulus))
    }

    pub fn constant(c: Fp) -> Self {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn pow(&self, exp: u64) -> Self {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Is this element a p-th power in F_p(c)? (c itself is not: the
    /// field is imperfect.)
    pub fn is_pth_power(&self, p: u64) -> bool {
        let check = |poly: &UniPoly| {
            poly.coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || (i as u64).is_multiple_of(p))
        };
        // Frobenius fixes F_p pointwise, so a reduced fraction is a p-th
        // power iff both parts use only exponents divisible by p.
        check(&self.num) && check(&self.den)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::new(vec![Fp::one()]),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        let one = UniPoly::new(vec![Fp::one()]);
        RatFunc {
            num: one.clone(),
            den: one,
        }
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl ExactScalar for RatFunc {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    fn embed_rat(&self, r: &Rat) -> Result<Self> {
        let modulus = self
            .num
            .leading()
            .or(self.den.leading())
            .map(|c| c.modulus())
            .unwrap_or(0);
        assert!(
            modulus != 0,
            "embedding a rational needs an attached modulus"
        );
        Ok(RatFunc::constant(Fp::from_rat(r, modulus)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u64) -> RatFunc {
        RatFunc::gen(p)
    }

    #[test]
    fn reduction_keeps_denominator_monic() {
        let p = 5;
        // (2c^2 + 2c) / (4c) reduces to (3c + 3) / 1 over F_5.
        let num = UniPoly::new(vec![Fp::new(0, p), Fp::new(2, p), Fp::new(2, p)]);
        let den = UniPoly::new(vec![Fp::new(0, p), Fp::new(4, p)]);
        let f = RatFunc::new(num, den);
        assert!(f.denominator().is_one());
        assert_eq!(
            f,
            RatFunc::from_poly(UniPoly::new(vec![Fp::new(3, p), Fp::new(3, p)]))
        );
    }

    #[test]
    fn field_ops_round_trip() {
        let p = 3;
        let x = c(p) + RatFunc::one();
        let y = c(p) * c(p) + c(p);
        let q = (x.clone() * ExactScalar::inv(&y).unwrap()) * y.clone();
        assert_eq!(q, x);
        assert_eq!(x.clone() - x.clone(), RatFunc::zero());
    }

    #[test]
    fn field_axioms_on_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
        for p in [2u64, 3, 5] {
            let rand_elem = |rng: &mut rand_chacha::ChaCha8Rng| -> RatFunc {
                let poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                    UniPoly::new(
                        (0..rng.gen_range(1..4))
                            .map(|_| Fp::new(rng.gen_range(0..p), p))
                            .collect(),
                    )
                };
                let num = poly(rng);
                let mut den = poly(rng);
                if den.is_zero() {
                    den = UniPoly::constant(Fp::new(1, p));
                }
                RatFunc::new(num, den)
            };
            for _ in 0..30 {
                let x = rand_elem(&mut rng);
                let y = rand_elem(&mut rng);
                let z = rand_elem(&mut rng);
                assert_eq!(
                    (x.clone() + y.clone()) + z.clone(),
                    x.clone() + (y.clone() + z.clone())
                );
                assert_eq!(
                    x.clone() * (y.clone() + z.clone()),
                    x.clone() * y.clone() + x.clone() * z.clone()
                );
                if !x.is_zero() {
                    assert_eq!(x.clone() * ExactScalar::inv(&x).unwrap(), RatFunc::one());
                }
            }
        }
    }

    #[test]
    fn generator_is_not_a_pth_power() {
        for p in [2u64, 3, 5] {
            assert!(!c(p).is_pth_power(p));
            assert!(c(p).pow(p).is_pth_power(p));
            assert!(RatFunc::constant(Fp::new(1, p)).is_pth_power(p));
        }
    }
}

//! Truncated Laurent series over any exact scalar (including polynomial
//! coefficients), with composition, rational powers and residue.
//!
//! A series stores a dense coefficient window for exponents
//! `ord..prec-1`; `prec` is the exclusive precision bound and every
//! operation records the smallest precision it can prove. The leading
//! stored coefficient is nonzero unless the series is identically zero to
//! precision, in which case the window is empty and `ord == prec`.

use num::Zero;
use serde_json::json;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{rat_binomial, ExactScalar, Rat};

/// Conventional working precision: 24 stored terms beyond the leading
/// exponent. Callers can always pass their own window.
pub const DEFAULT_PRECISION: i64 = 24;

#[derive(Clone, Debug)]
pub struct TruncatedSeries<C: ExactScalar> {
    ord: i64,
    prec: i64,
    coeffs: Vec<C>,
}

impl<C: ExactScalar> TruncatedSeries<C> {
    /// Build from a coefficient window starting at `ord`; leading zeros
    /// are trimmed.
    pub fn new(ord: i64, coeffs: Vec<C>) -> Self {
        let prec = ord + coeffs.len() as i64;
        let mut s = TruncatedSeries { ord, prec, coeffs };
        s.normalize();
        s
    }

    /// The zero series known to precision `prec`.
    pub fn zero_to(prec: i64) -> Self {
        TruncatedSeries {
            ord: prec,
            prec,
            coeffs: vec![],
        }
    }

    pub fn monomial(c: C, exp: i64, prec: i64) -> Self {
        assert!(exp < prec, "monomial exponent must lie under the precision");
        let mut coeffs = vec![C::zero(); (prec - exp) as usize];
        coeffs[0] = c;
        TruncatedSeries::new(exp, coeffs)
    }

    pub fn one_to(prec: i64) -> Self {
        TruncatedSeries::monomial(C::one(), 0, prec)
    }

    /// t itself, known to `prec`.
    pub fn gen_to(prec: i64) -> Self {
        TruncatedSeries::monomial(C::one(), 1, prec)
    }

    fn normalize(&mut self) {
        let mut lead = 0;
        while lead < self.coeffs.len() && self.coeffs[lead].is_zero() {
            lead += 1;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.ord += lead as i64;
        }
        debug_assert_eq!(self.ord + self.coeffs.len() as i64, self.prec);
    }

    /// Smallest stored exponent; equals `prec` for a series that is zero
    /// to precision.
    pub fn ord(&self) -> i64 {
        self.ord
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `exp`; zero below the window, error at or above the
    /// precision bound (the value there is unknown).
    pub fn coeff(&self, exp: i64) -> Result<C> {
        if exp >= self.prec {
            return Err(Error::PrecisionWindow {
                ord: self.ord,
                prec: self.prec,
                needed: exp,
            });
        }
        if exp < self.ord {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(exp - self.ord) as usize].clone())
    }

    /// Coefficients of exponents `lo..hi` (all must be below `prec`).
    pub fn window(&self, lo: i64, hi: i64) -> Result<Vec<C>> {
        (lo..hi).map(|e| self.coeff(e)).collect()
    }

    pub fn truncate(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec {
            return self.clone();
        }
        let keep = (new_prec - self.ord).max(0) as usize;
        let mut s = TruncatedSeries {
            ord: self.ord.min(new_prec),
            prec: new_prec,
            coeffs: self.coeffs[..keep].to_vec(),
        };
        s.normalize();
        s
    }

    /// Multiply by t^shift (exact).
    pub fn shift(&self, shift: i64) -> Self {
        TruncatedSeries {
            ord: self.ord + shift,
            prec: self.prec + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        if c.is_zero() {
            return TruncatedSeries::zero_to(self.prec);
        }
        let mut s = TruncatedSeries {
            ord: self.ord,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        };
        s.normalize();
        s
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let ord = self.ord.min(rhs.ord).min(prec);
        let mut coeffs = vec![C::zero(); (prec - ord) as usize];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let e = ord + i as i64;
            let a = if e >= self.ord && e < self.prec {
                self.coeff(e).unwrap()
            } else {
                C::zero()
            };
            let b = if e >= rhs.ord && e < rhs.prec {
                rhs.coeff(e).unwrap()
            } else {
                C::zero()
            };
            *c = a + b;
        }
        TruncatedSeries::new(ord, coeffs)
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        TruncatedSeries {
            ord: self.ord,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Product with precision min(a.prec + b.ord, b.prec + a.ord).
    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let prec = (self.prec + rhs.ord).min(rhs.prec + self.ord);
        let ord = self.ord + rhs.ord;
        if self.is_zero_to_prec() || rhs.is_zero_to_prec() {
            return TruncatedSeries::zero_to(prec);
        }
        let len = (prec - ord).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries::new(ord, coeffs)
    }

    pub fn derivative(&self) -> Result<Self> {
        let prec = self.prec - 1;
        if self.is_zero_to_prec() {
            return Ok(TruncatedSeries::zero_to(prec));
        }
        let mut out = vec![];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.ord + i as i64;
            if e == 0 || c.is_zero() {
                out.push(C::zero());
            } else {
                out.push(c.clone() * c.embed_int(e)?);
            }
        }
        // Derivative of the t^0 slot vanishes; realign the window.
        Ok(TruncatedSeries::new(self.ord - 1, out))
    }

    /// Coefficient of t^-1 (the residue of f dt). Errors when the
    /// precision window cannot certify it.
    pub fn residue(&self) -> Result<C> {
        self.coeff(-1)
    }

    /// f^alpha for rational alpha. Writing f = c t^d (1 + u): d*alpha
    /// must be an integer, and non-integer alpha requires c = 1 (callers
    /// normalize by x0 first).
    pub fn pow_rational(&self, alpha: &Rat) -> Result<Self> {
        if self.is_zero_to_prec() {
            return Err(Error::FractionalPower);
        }
        let d = self.ord;
        let c = self.coeffs[0].clone();
        let rel_prec = self.prec - d; // precision of 1 + u
        let alpha_int: Option<i64> = if alpha.is_integer() {
            Some(
                alpha
                    .numer()
                    .try_into()
                    .map_err(|_| Error::Unsupported("exponent too large".into()))?,
            )
        } else {
            None
        };

        // Total exponent d*alpha must be an integer.
        let d_alpha = alpha * Rat::from_integer(d.into());
        if !d_alpha.is_integer() {
            return Err(Error::FractionalPower);
        }
        let new_ord: i64 = d_alpha
            .numer()
            .try_into()
            .map_err(|_| Error::Unsupported("exponent too large".into()))?;

        // Leading coefficient: c^alpha only defined here for integer
        // alpha or c = 1.
        let c_pow = match alpha_int {
            Some(n) if n >= 0 => {
                let mut acc = C::one();
                for _ in 0..n {
                    acc = acc * c.clone();
                }
                acc
            }
            Some(n) => {
                let ci = c.inv()?;
                let mut acc = C::one();
                for _ in 0..-n {
                    acc = acc * ci.clone();
                }
                acc
            }
            None => {
                if !c.is_one() {
                    return Err(Error::FractionalPower);
                }
                C::one()
            }
        };

        // u = tail / c, relative exponents 1..rel_prec.
        let c_inv_opt = if c.is_one() { None } else { Some(c.inv()?) };
        let mut u_coeffs = vec![C::zero(); rel_prec.max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate().skip(1) {
            let v = match &c_inv_opt {
                None => a.clone(),
                Some(ci) => a.clone() * ci.clone(),
            };
            u_coeffs[i] = v;
        }
        let u = TruncatedSeries::new(0, u_coeffs);

        // Binomial series: sum_j binom(alpha, j) u^j, truncated at the
        // relative precision. The leading coefficient supplies the
        // embedding context (it is a stored, attached element).
        let mut acc = TruncatedSeries::zero_to(rel_prec);
        let mut u_pow = TruncatedSeries::one_to(rel_prec);
        let context = self.coeffs[0].clone();
        for j in 0..rel_prec.max(1) as u32 {
            let b = rat_binomial(alpha, j);
            if !b.is_zero() {
                acc = acc.add_ref(&u_pow.scalar_mul(&context.embed_rat(&b)?));
            }
            if (j as i64) + 1 >= rel_prec {
                break;
            }
            u_pow = u_pow.mul_ref(&u).truncate(rel_prec);
        }

        Ok(acc.scalar_mul(&c_pow).shift(new_ord))
    }

    /// Multiplicative inverse (leading coefficient must be invertible).
    pub fn inverse(&self) -> Result<Self> {
        self.pow_rational(&Rat::from_integer((-1).into()))
    }

    /// Integer power through the same route as rational powers.
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        self.pow_rational(&Rat::from_integer(n.into()))
    }

    /// Composition f(g) for ord(g) >= 1. Negative exponents of f are
    /// served through the inverse of g.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if g.is_zero_to_prec() || g.ord < 1 {
            return Err(Error::CompositionOrder {
                ord: if g.is_zero_to_prec() { g.prec } else { g.ord },
            });
        }
        let og = g.ord;
        let rel = g.prec - og;
        // Error from truncating f at prec enters at t^(f.prec * og); the
        // error of g's own window enters at t^(n*og + rel) for the
        // smallest used power n = f.ord.
        if self.is_zero_to_prec() {
            return Ok(TruncatedSeries::zero_to(self.prec * og));
        }
        let prec = (self.prec * og).min(self.ord * og + rel);

        // Factor out the leading power: f o g = g^ord(f) * (fhat o g)
        // with fhat = t^-ord(f) f of order 0. This keeps the full
        // provable precision since fhat's window is at most rel wide.
        let prec_hat = prec - self.ord * og;
        let mut horner = TruncatedSeries::zero_to(prec_hat + og);
        for c in self.coeffs.iter().rev() {
            horner = horner.mul_ref(g).truncate(prec_hat);
            if !c.is_zero() {
                horner = horner.add_ref(&TruncatedSeries::monomial(c.clone(), 0, prec_hat));
            }
        }
        let base = g.pow_int(self.ord)?;
        Ok(base.mul_ref(&horner).truncate(prec))
    }

    /// Equality of every coefficient on the shared window.
    pub fn eq_to_common_prec(&self, rhs: &Self) -> bool {
        let prec = self.prec.min(rhs.prec);
        let lo = self.ord.min(rhs.ord).min(prec);
        (lo..prec).all(|e| self.coeff(e).unwrap() == rhs.coeff(e).unwrap())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ord": self.ord,
            "prec": self.prec,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl<C: ExactScalar> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_to_prec() {
            return write!(f, "O(t^{})", self.prec);
        }
        let mut inner = String::new();
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let cs = c.to_string();
            let cs = if cs.contains(' ') {
                format!("({cs})")
            } else {
                cs
            };
            let term = match i {
                0 => cs,
                1 if cs == "1" => "t".into(),
                1 => format!("{cs}*t"),
                _ if cs == "1" => format!("t^{i}"),
                _ => format!("{cs}*t^{i}"),
            };
            if inner.is_empty() {
                inner = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                inner.push_str(&format!(" - {rest}"));
            } else {
                inner.push_str(&format!(" + {term}"));
            }
        }
        if self.ord == 0 {
            write!(f, "{inner} + O(t^{})", self.prec)
        } else {
            write!(f, "t^{}*({inner}) + O(t^{})", self.ord, self.prec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    type S = TruncatedSeries<Rat>;

    fn from_ints(ord: i64, vals: &[i64]) -> S {
        TruncatedSeries::new(ord, vals.iter().map(|&v| rat_int(v)).collect())
    }

    #[test]
    fn compose_examples() {
        // f = t^2, g = t + t^2 -> t^2 + 2 t^3 + t^4.
        let f = from_ints(2, &[1, 0, 0, 0, 0, 0]);
        let g = from_ints(1, &[1, 1, 0, 0, 0, 0, 0]);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.coeff(2).unwrap(), rat_int(1));
        assert_eq!(h.coeff(3).unwrap(), rat_int(2));
        assert_eq!(h.coeff(4).unwrap(), rat_int(1));
        assert_eq!(h.coeff(5).unwrap(), rat_int(0));

        // Identity substitution.
        let id = S::gen_to(8);
        let f2 = from_ints(0, &[3, 1, 4, 1, 5]);
        assert!(f2.compose(&id).unwrap().eq_to_common_prec(&f2));

        // f = t^-1: multiply result back by g and compare with 1.
        let finv = from_ints(-1, &[1, 0, 0, 0, 0, 0, 0, 0]);
        let comp = finv.compose(&g).unwrap();
        let check = comp.mul_ref(&g);
        assert!(check.eq_to_common_prec(&S::one_to(check.prec())));

        // ord(g) = 0 rejected.
        let bad = from_ints(0, &[1, 1]);
        assert!(f.compose(&bad).is_err());
    }

    #[test]
    fn compose_with_negative_precision_window() {
        // A deep pole composed with a short g: only the most negative
        // exponents stay certifiable, and they must stay correct.
        let f = from_ints(-10, &[1, 2, 3]);
        let g = from_ints(1, &[1, 1]);
        let short = f.compose(&g).unwrap();
        assert_eq!(short.prec(), -8);
        let g_long = from_ints(1, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let f_long = from_ints(-10, &[1, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let long = f_long.compose(&g_long).unwrap();
        assert!(short.eq_to_common_prec(&long.truncate(short.prec())));
    }

    #[test]
    fn pow_rational_examples() {
        // (1+t)^(1/2): square it back.
        let f = from_ints(0, &[1, 1, 0, 0, 0, 0, 0, 0]);
        let r = f.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(r.coeff(1).unwrap(), rat(1, 2));
        assert_eq!(r.coeff(2).unwrap(), rat(-1, 8));
        let sq = r.mul_ref(&r);
        assert!(sq.eq_to_common_prec(&f.truncate(sq.prec())));

        // f^1 = f.
        assert!(f.pow_rational(&rat_int(1)).unwrap().eq_to_common_prec(&f));

        // (1 + c t^2)^(1/2) has c/2 at t^2 (c = 3 here).
        let g = from_ints(0, &[1, 0, 3, 0, 0, 0]);
        let rg = g.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(rg.coeff(2).unwrap(), rat(3, 2));

        // Fractional power with leading coefficient != 1 is rejected...
        let h = from_ints(0, &[4, 1, 0, 0]);
        assert!(h.pow_rational(&rat(1, 2)).is_err());
        // ...but integer powers are fine.
        assert!(h.pow_int(-2).is_ok());

        // d * alpha not an integer is rejected.
        let t = from_ints(1, &[1, 0, 0]);
        assert!(t.pow_rational(&rat(1, 2)).is_err());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(from_ints(-1, &[1, 0]).residue().unwrap(), rat_int(1));
        assert_eq!(from_ints(-3, &[2, 0, 5, 7]).residue().unwrap(), rat_int(5));
        // Window excluding -1 is an error.
        assert!(from_ints(0, &[1, 2]).residue().is_ok());
        assert!(S::zero_to(-1).residue().is_err());

        // Logarithmic derivative: res(f'/f) = ord(f) for f = t^3 (1 + t).
        let f = from_ints(3, &[1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let lder = f.derivative().unwrap().mul_ref(&f.inverse().unwrap());
        assert_eq!(lder.residue().unwrap(), rat_int(3));
    }

    #[test]
    fn derivative_of_exact_form_has_no_residue() {
        let f = from_ints(-4, &[2, 3, 0, 5, 7, 1, 2, 9]);
        // f has no t^-1... it does (exponent -1 = coeff index 3 -> 5).
        // Remove it to make f an antiderivative window.
        let mut g = f.clone();
        g = g.sub_ref(&S::monomial(rat_int(5), -1, g.prec()));
        let d = g.derivative().unwrap();
        assert_eq!(d.residue().unwrap(), rat_int(0));
    }

    #[test]
    fn product_composition_distributes() {
        // (f*g) o h = (f o h) * (g o h) on seeded random triples.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(314);
        fn rand_series(rng: &mut rand_chacha::ChaCha8Rng, ord: i64) -> S {
            let mut v: Vec<Rat> = (0..12).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
            if v[0].is_zero() {
                v[0] = rat_int(rng.gen_range(1..=3));
            }
            TruncatedSeries::new(ord, v)
        }
        for _ in 0..25 {
            let ford = rng.gen_range(-2..=2);
            let gord = rng.gen_range(-1..=2);
            let f = rand_series(&mut rng, ford);
            let g = rand_series(&mut rng, gord);
            let h = rand_series(&mut rng, 1);
            let lhs = f.mul_ref(&g).compose(&h).unwrap();
            let rhs = f.compose(&h).unwrap().mul_ref(&g.compose(&h).unwrap());
            assert!(lhs.eq_to_common_prec(&rhs));
        }
    }

    #[test]
    fn pow_inverse_cancels() {
        for alpha in [rat(1, 2), rat(-1, 3), rat(2, 5)] {
            let f = from_ints(0, &[1, 2, -1, 3, 0, 1, 4, -2, 0, 0, 1, 5]);
            let a = f.pow_rational(&alpha).unwrap();
            let b = f.pow_rational(&(-alpha.clone())).unwrap();
            let prod = a.mul_ref(&b);
            assert!(prod.eq_to_common_prec(&S::one_to(prod.prec())));
        }
    }

    proptest::proptest! {
        // f^alpha * f^-alpha = 1 for random unit series.
        #[test]
        fn pow_and_inverse_pow_cancel(tail in proptest::collection::vec(-4i64..=4, 9),
                                      which in 0usize..3) {
            let alpha = [rat(1, 2), rat(-1, 3), rat(2, 5)][which].clone();
            let mut vals = vec![1i64];
            vals.extend(tail);
            let f = from_ints(0, &vals);
            let a = f.pow_rational(&alpha).unwrap();
            let b = f.pow_rational(&(-alpha)).unwrap();
            let prod = a.mul_ref(&b);
            proptest::prop_assert!(prod.eq_to_common_prec(&S::one_to(prod.prec())));
        }
    }

    #[test]
    fn precision_claims_validated_at_higher_precision() {
        // Recompute with more input terms and compare the overlap.
        let build = |prec: i64| -> (S, S) {
            let f = TruncatedSeries::new(
                -2,
                (0..(prec + 2))
                    .map(|i| rat_int(((i * 7 + 3) % 11) - 5))
                    .collect(),
            );
            let g = TruncatedSeries::new(
                1,
                (0..(prec - 1))
                    .map(|i| rat_int(if i == 0 { 1 } else { (i % 4) - 2 }))
                    .collect(),
            );
            (f, g)
        };
        let (f1, g1) = build(10);
        let (f2, g2) = build(16);
        let lo = f1.compose(&g1).unwrap();
        let hi = f2.compose(&g2).unwrap();
        assert!(hi.prec() >= lo.prec());
        assert!(lo.eq_to_common_prec(&hi.truncate(lo.prec())));

        let m_lo = f1.mul_ref(&g1);
        let m_hi = f2.mul_ref(&g2);
        assert!(m_lo.eq_to_common_prec(&m_hi.truncate(m_lo.prec())));
    }
}

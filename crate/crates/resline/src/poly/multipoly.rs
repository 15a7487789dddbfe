//! Sparse multivariate polynomials over an exact scalar field.
//!
//! Terms live in a `BTreeMap` keyed by the graded-lex monomial order, so
//! serialization (descending) is canonical and deterministic. No zero
//! coefficients are ever stored.

use num::{One, Zero};
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Rat};

/// Variable alphabet used for display and JSON; the x variables are the
/// tensor coefficients, u the QFT variables, l the Lie generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Alphabet {
    #[default]
    X,
    U,
    L,
}

impl Alphabet {
    pub fn letter(self) -> char {
        match self {
            Alphabet::X => 'x',
            Alphabet::U => 'u',
            Alphabet::L => 'l',
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly<C: ExactScalar> {
    terms: BTreeMap<Monomial, C>,
    alphabet: Alphabet,
}

impl<C: ExactScalar> MultiPoly<C> {
    pub fn zero_in(alphabet: Alphabet) -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            alphabet,
        }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MultiPoly {
            terms,
            alphabet: Alphabet::default(),
        }
    }

    pub fn constant_in(c: C, alphabet: Alphabet) -> Self {
        let mut p = MultiPoly::constant(c);
        p.alphabet = alphabet;
        p
    }

    pub fn var(index: usize) -> Self
    where
        C: One,
    {
        MultiPoly::from_terms(vec![(Monomial::var(index), C::one())], Alphabet::default())
    }

    pub fn var_in(index: usize, alphabet: Alphabet) -> Self {
        MultiPoly::from_terms(vec![(Monomial::var(index), C::one())], alphabet)
    }

    pub fn from_terms(list: Vec<(Monomial, C)>, alphabet: Alphabet) -> Self {
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in list {
            if c.is_zero() {
                continue;
            }
            match terms.remove(&m) {
                None => {
                    terms.insert(m, c);
                }
                Some(old) => {
                    let s = old + c;
                    if !s.is_zero() {
                        terms.insert(m, s);
                    }
                }
            }
        }
        MultiPoly { terms, alphabet }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    fn unified_alphabet(&self, other: &Self) -> Alphabet {
        match (self.max_var(), other.max_var()) {
            (None, _) => other.alphabet,
            (_, None) => self.alphabet,
            (Some(_), Some(_)) => {
                assert_eq!(
                    self.alphabet, other.alphabet,
                    "cannot mix {:?} and {:?} variables",
                    self.alphabet, other.alphabet
                );
                self.alphabet
            }
        }
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match terms.remove(&m) {
            None => {
                terms.insert(m, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    terms.insert(m, s);
                }
            }
        }
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let alphabet = self.unified_alphabet(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Self::insert_add(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { terms, alphabet }
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        let alphabet = self.unified_alphabet(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Self::insert_add(&mut terms, m.clone(), -c.clone());
        }
        MultiPoly { terms, alphabet }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let alphabet = self.unified_alphabet(rhs);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                Self::insert_add(&mut terms, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        MultiPoly { terms, alphabet }
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        if c.is_zero() {
            return MultiPoly::zero_in(self.alphabet);
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            alphabet: self.alphabet,
        }
    }

    /// Multiply by an exact rational (embedded through any term's context).
    pub fn mul_rat(&self, r: &Rat) -> Result<Self> {
        if r.is_zero() || self.terms.is_empty() {
            return Ok(MultiPoly::zero_in(self.alphabet));
        }
        let sample = self.terms.values().next().unwrap();
        let c = sample.embed_rat(r)?;
        Ok(self.scalar_mul(&c))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = MultiPoly::constant_in(C::one(), self.alphabet);
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn map_coeffs<D: ExactScalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            alphabet: self.alphabet,
        }
    }

    pub fn derivative(&self, var: usize) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let lower = m.try_div(&Monomial::var(var)).unwrap();
            let factor = c.embed_int(e as i64)?;
            Self::insert_add(&mut terms, lower, c.clone() * factor);
        }
        Ok(MultiPoly {
            terms,
            alphabet: self.alphabet,
        })
    }

    /// Antiderivative in `var` with integration constant zero.
    pub fn integrate(&self, var: usize) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let higher = m.mul(&Monomial::var(var));
            let factor = c.embed_rat(&Rat::new(1.into(), (e as i64 + 1).into()))?;
            Self::insert_add(&mut terms, higher, c.clone() * factor);
        }
        Ok(MultiPoly {
            terms,
            alphabet: self.alphabet,
        })
    }

    /// Evaluate at a full point (values indexed by variable).
    pub fn eval(&self, values: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, e) in m.iter_vars() {
                let v = &values[i];
                for _ in 0..e {
                    term = term * v.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitute a scalar value for one variable.
    pub fn substitute_value(&self, var: usize, value: &C) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff * value.clone();
            }
            let rest = m.try_div(&Monomial::var_pow(var, e)).unwrap();
            Self::insert_add(&mut terms, rest, coeff);
        }
        MultiPoly {
            terms,
            alphabet: self.alphabet,
        }
    }

    /// Remap variable indices, e.g. the substitution x_i = l_{n-i}.
    pub fn map_vars(&self, f: impl Fn(usize) -> usize, alphabet: Alphabet) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.map_vars(&f), c.clone()))
                .collect(),
            alphabet,
        }
    }

    /// Exact division by x_var^e; errors when any term lacks the power.
    pub fn div_exact_var_pow(&self, var: usize, e: u32) -> Result<Self> {
        let divisor = Monomial::var_pow(var, e);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            match m.try_div(&divisor) {
                Some(q) => {
                    terms.insert(q, c.clone());
                }
                None => {
                    return Err(Error::InexactDivision(format!(
                        "monomial not divisible by {}{}^{}",
                        self.alphabet.letter(),
                        var,
                        e
                    )))
                }
            }
        }
        Ok(MultiPoly {
            terms,
            alphabet: self.alphabet,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nvars = self.max_var().map(|v| v + 1).unwrap_or(0);
        let terms: Vec<_> = self
            .terms_desc()
            .map(|(m, c)| {
                let mut exps = vec![0u32; nvars];
                for (i, e) in m.iter_vars() {
                    exps[i] = e;
                }
                json!({ "coeff": c.to_string(), "exps": exps })
            })
            .collect();
        json!({ "vars": self.alphabet.letter().to_string(), "terms": terms })
    }
}

impl<C: ExactScalar> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: ExactScalar> Add for MultiPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<C: ExactScalar> Sub for MultiPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<C: ExactScalar> Neg for MultiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
            alphabet: self.alphabet,
        }
    }
}

impl<C: ExactScalar> Mul for MultiPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: ExactScalar> Zero for MultiPoly<C> {
    fn zero() -> Self {
        MultiPoly::zero_in(Alphabet::default())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: ExactScalar> One for MultiPoly<C> {
    fn one() -> Self {
        MultiPoly::constant(C::one())
    }
    fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }
}

impl<C: ExactScalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.alphabet.letter();
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let mono = m
                .iter_vars()
                .map(|(i, e)| {
                    if e == 1 {
                        format!("{letter}{i}")
                    } else {
                        format!("{letter}{i}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            let cs = c.to_string();
            // Parenthesize structured coefficients like "3 mod 7" or "c + 1".
            let cs = if cs.contains(' ') {
                format!("({cs})")
            } else {
                cs
            };
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl<C: ExactScalar> ExactScalar for MultiPoly<C> {
    /// Inverse exists only for constant units; this is what lets the
    /// series container run over polynomial coefficients using ring
    /// operations plus exactness checks.
    fn inv(&self) -> Result<Self> {
        match self.constant_value() {
            Some(c) if !c.is_zero() => Ok(MultiPoly::constant_in(c.inv()?, self.alphabet)),
            Some(_) => Err(Error::DivisionByZero),
            None => Err(Error::InexactDivision(
                "non-constant polynomial has no inverse".into(),
            )),
        }
    }

    fn embed_rat(&self, r: &Rat) -> Result<Self> {
        let sample = self.terms.values().next();
        let c = match sample {
            Some(s) => s.embed_rat(r)?,
            None => {
                // Zero polynomial gives no context; fall back to a
                // detached identity-built coefficient.
                let one = C::one();
                one.embed_rat(r)?
            }
        };
        Ok(MultiPoly::constant_in(c, self.alphabet))
    }
}

/// Report from the homogeneity / equalized-weight check.
#[derive(Clone, Debug)]
pub struct WeightReport {
    pub pass: bool,
    /// Offending monomials with their (degree, weight).
    pub failures: Vec<(String, u32, u64)>,
}

/// Check that every monomial has the given total degree (when specified)
/// and equalized weight (x_i carrying weight i).
pub fn weighted_checks<C: ExactScalar>(
    p: &MultiPoly<C>,
    degree: Option<u32>,
    weight: u64,
) -> WeightReport {
    let mut failures = vec![];
    for (m, _) in p.terms_desc() {
        let d = m.total_degree();
        let w = m.weight();
        let degree_ok = degree.map(|k| d == k).unwrap_or(true);
        // The zero polynomial and constants: a constant term has weight 0,
        // which only passes when the required weight is 0.
        if !degree_ok || w != weight {
            failures.push((format!("{:?}", m.exps()), d, w));
        }
    }
    WeightReport {
        pass: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn x(i: usize) -> MultiPoly<Rat> {
        MultiPoly::var(i)
    }

    #[test]
    fn canonical_display() {
        // (4 x0 x2 - x1^2) / 8
        let p = (x(0).mul_ref(&x(2))).mul_rat(&rat(1, 2)).unwrap()
            - x(1).mul_ref(&x(1)).mul_rat(&rat(1, 8)).unwrap();
        assert_eq!(p.to_string(), "1/2*x0*x2 - 1/8*x1^2");
        assert_eq!(MultiPoly::<Rat>::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = x(0).mul_ref(&x(1)) + MultiPoly::constant(rat_int(3));
        let v = p.eval(&[rat_int(2), rat_int(5)]);
        assert_eq!(v, rat_int(13));
        let q = p.clone() - p;
        assert!(q.is_zero());
    }

    #[test]
    fn derivative_integrate_round_trip() {
        let p = x(1).pow(3).mul_rat(&rat(2, 3)).unwrap().mul_ref(&x(0));
        let d = p.derivative(1).unwrap();
        let back = d.integrate(1).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn exact_division_by_x0() {
        let p = x(0).pow(2).mul_ref(&x(3)) + x(0).mul_ref(&x(1));
        let q = p.div_exact_var_pow(0, 1).unwrap();
        assert_eq!(q, x(0).mul_ref(&x(3)) + x(1));
        assert!(p.div_exact_var_pow(0, 3).is_err());
    }

    #[test]
    fn weighted_check_examples() {
        let p02 = (x(0).mul_ref(&x(2))).mul_rat(&rat(1, 2)).unwrap()
            - x(1).mul_ref(&x(1)).mul_rat(&rat(1, 8)).unwrap();
        assert!(weighted_checks(&p02, Some(2), 2).pass);
        let bad = x(0).mul_ref(&x(2)) + x(1);
        let report = weighted_checks(&bad, Some(2), 2);
        assert!(!report.pass);
        assert_eq!(report.failures.len(), 1);
        assert!(weighted_checks(&MultiPoly::<Rat>::one(), Some(0), 0).pass);
    }

    #[test]
    fn json_shape() {
        let p = x(0).mul_ref(&x(2)).mul_rat(&rat(1, 2)).unwrap();
        let v = p.to_json();
        assert_eq!(v["vars"], "x");
        assert_eq!(v["terms"][0]["coeff"], "1/2");
        assert_eq!(v["terms"][0]["exps"], serde_json::json!([1, 0, 1]));
    }
}

//! Positive-characteristic layer: the invariants ord0 / md / ord_md and
//! the width of a formal series over F_p, Lucas-type multinomial
//! congruences through p-adic digits, the imperfect-field series with no
//! polynomial normal form, and the restricted mod-p invariance check.

use num::{BigInt, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pmk::lie::{lie_action, LieTruncation};
use crate::pmk::{pmk_partition, PmkSpec};
use crate::poly::{Alphabet, MultiPoly};
use crate::scalar::{padic_valuation, rat, ExactScalar, Fp, RatFunc};
use crate::series::TruncatedSeries;
use crate::{FpPoly, FpSeries, FuncSeries};

/// Base-p digits with an eventually-constant tail (0 for nonnegative
/// integers, p-1 for negative ones).
#[derive(Clone, Debug, PartialEq)]
pub struct PadicDigits {
    p: u64,
    digits: Vec<u64>,
    tail: u64,
}

impl PadicDigits {
    /// Digits of an integer with `explicit` low digits unrolled.
    pub fn of_integer(k: i64, p: u64, explicit: usize) -> Self {
        let tail = if k >= 0 { 0 } else { p - 1 };
        let big_p = BigInt::from(p);
        let modulus = big_p.pow(explicit as u32);
        let mut m = ((BigInt::from(k) % &modulus) + &modulus) % &modulus;
        let mut digits = Vec::with_capacity(explicit);
        for _ in 0..explicit {
            let d: u64 = (&m % &big_p).try_into().expect("digit fits");
            digits.push(d);
            m /= &big_p;
        }
        PadicDigits { p, digits, tail }
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(self.tail)
    }

    pub fn tail(&self) -> u64 {
        self.tail
    }
}

/// The three order invariants of a nonzero series; `md` is None when the
/// series is constant to precision (md = infinity, not certifiable).
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CharpInvariants {
    pub ord0: Option<i64>,
    pub md: Option<u32>,
    pub ord_md: Option<i64>,
    /// Lowered when the series is constant to precision, so md is only
    /// a precision-limited statement.
    pub certified: bool,
}

fn nonzero_exponents<C: ExactScalar>(h: &TruncatedSeries<C>) -> Vec<i64> {
    (h.ord()..h.prec())
        .filter(|&e| e != 0 && !h.coeff(e).unwrap().is_zero())
        .collect()
}

/// ord0 = ord(h - x0(h)); md = max m with h in f((t^(p^m)));
/// ord_md = the smallest exponent whose p-valuation equals md (the order
/// that survives subtracting any element of f((t^(p^(md+1))))).
pub fn charp_invariants<C: ExactScalar>(h: &TruncatedSeries<C>, p: u64) -> Result<CharpInvariants> {
    if h.is_zero_to_prec() {
        return Err(Error::InvalidParameter(
            "invariants need a series that is nonzero to precision".into(),
        ));
    }
    let exps = nonzero_exponents(h);
    if exps.is_empty() {
        // Constant to precision: md unbounded within the window.
        return Ok(CharpInvariants {
            ord0: None,
            md: None,
            ord_md: None,
            certified: false,
        });
    }
    let ord0 = exps[0];
    let md = exps.iter().map(|&e| padic_valuation(e, p)).min().unwrap();
    let ord_md = exps
        .iter()
        .copied()
        .find(|&e| padic_valuation(e, p) == md)
        .expect("some exponent realizes the minimum valuation");
    Ok(CharpInvariants {
        ord0: Some(ord0),
        md: Some(md),
        ord_md: Some(ord_md),
        certified: true,
    })
}

/// The width w(h): over all nonzero exponents m < ord_md with x_m != 0,
/// the largest floor((ord_md - m) / (p^v(m) - p^v(ord_md))), when
/// ord_md > ord0; otherwise 0.
pub fn width<C: ExactScalar>(h: &TruncatedSeries<C>, p: u64) -> Result<i64> {
    let inv = charp_invariants(h, p)?;
    let (Some(ord0), Some(md), Some(ord_md)) = (inv.ord0, inv.md, inv.ord_md) else {
        return Ok(0);
    };
    if ord_md <= ord0 {
        return Ok(0);
    }
    let pv_target = BigInt::from(p).pow(md);
    let mut best: Option<i64> = None;
    for m in nonzero_exponents(h) {
        if m >= ord_md {
            continue;
        }
        let pv = BigInt::from(p).pow(padic_valuation(m, p));
        let denom = &pv - &pv_target;
        // Every candidate valuation exceeds md by the choice of ord_md.
        assert!(denom.is_positive(), "width denominator must be positive");
        let num = BigInt::from(ord_md - m);
        let q: i64 = (num / denom).try_into().expect("width fits i64");
        best = Some(best.map_or(q, |b: i64| b.max(q)));
    }
    // ord_md > ord0 guarantees at least the candidate m = ord0.
    Ok(best.expect("candidate set nonempty when ord_md > ord0"))
}

/// Deterministic random substitution over F_p: g(t) = c t + a_2 t^2 + ...
/// with c in F_p^* (c = 1 when scalings are disabled).
pub fn random_fp_automorphism(p: u64, prec: i64, seed: u64, allow_scaling: bool) -> FpSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = Vec::with_capacity((prec - 1).max(1) as usize);
    let c = if allow_scaling {
        rng.gen_range(1..p)
    } else {
        1
    };
    coeffs.push(Fp::new(c, p));
    for _ in 2..prec {
        coeffs.push(Fp::new(rng.gen_range(0..p), p));
    }
    TruncatedSeries::new(1, coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthInvarianceReport {
    pub p: u64,
    pub trials: u32,
    pub with_scalings: bool,
    pub base: CharpInvariants,
    pub base_width: i64,
    pub all_stable: bool,
    /// Seed of the first failing trial, with the changed quantity.
    pub first_failure: Option<(u64, String)>,
    /// Whether the raw coefficient x_2 (a non-invariant probe) changed
    /// in at least one trial.
    pub probe_changed: Option<bool>,
}

/// Apply seeded random substitutions and check that ord0, md, ord_md and
/// the width are all unchanged.
pub fn width_invariance_test(
    h: &FpSeries,
    p: u64,
    trials: u32,
    seed: u64,
    with_scalings: bool,
) -> Result<WidthInvarianceReport> {
    let base = charp_invariants(h, p)?;
    let base_width = width(h, p)?;
    let probe_base = if 2 < h.prec() {
        Some(h.coeff(2)?)
    } else {
        None
    };
    let mut probe_changed = None;
    let g_prec = h.prec() - h.ord().min(0) + 2;

    let mut first_failure = None;
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64);
        let g = random_fp_automorphism(p, g_prec, trial_seed, with_scalings);
        let moved = h.compose(&g)?;
        let inv = charp_invariants(&moved, p)?;
        let w = width(&moved, p)?;
        if inv != base || w != base_width {
            let what = if inv != base {
                "order invariants"
            } else {
                "width"
            };
            first_failure = Some((trial_seed, what.to_string()));
            break;
        }
        if let Some(pb) = &probe_base {
            if 2 < moved.prec() && &moved.coeff(2)? != pb {
                probe_changed = Some(true);
            } else {
                probe_changed.get_or_insert(false);
            }
        }
    }

    Ok(WidthInvarianceReport {
        p,
        trials,
        with_scalings,
        base,
        base_width,
        all_stable: first_failure.is_none(),
        first_failure,
        probe_changed,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LucasResult {
    pub residue: u64,
    pub nonzero: bool,
}

fn multinomial_digit_mod_p(k_digit: u64, q_digits: &[u64], p: u64) -> u64 {
    let total: u64 = q_digits.iter().sum();
    if total > k_digit {
        return 0;
    }
    // Multinomial of values below p, as a product of binomials.
    let mut acc: u64 = 1;
    let mut remaining = k_digit;
    for &q in q_digits {
        acc = (acc as u128 * binomial_mod_p(remaining, q, p) as u128 % p as u128) as u64;
        remaining -= q;
    }
    acc
}

fn binomial_mod_p(n: u64, r: u64, p: u64) -> u64 {
    if r > n {
        return 0;
    }
    let mut num = Fp::new(1, p);
    let mut den = Fp::new(1, p);
    for i in 0..r {
        num = num * Fp::new((n - i) % p, p);
        den = den * Fp::new((i + 1) % p, p);
    }
    (num * ExactScalar::inv(&den).expect("r < p so the factorial is a unit")).value()
}

/// Lucas-type congruence: the multinomial binom(k; q_1, q_2, ...) taken
/// mod p equals the digit-wise product of multinomials, and it is
/// nonzero iff every digit of k dominates the digit sums. Negative k
/// works through the all-(p-1) digit tails.
pub fn lucas_multinomial(k: i64, qs: &[u64], p: u64) -> LucasResult {
    let digits_needed = qs
        .iter()
        .map(|&q| {
            let mut n = q;
            let mut d = 0;
            while n > 0 {
                n /= p;
                d += 1;
            }
            d
        })
        .max()
        .unwrap_or(0)
        + 1;
    let kd = PadicDigits::of_integer(k, p, digits_needed);

    let mut residue: u64 = 1;
    let mut nonzero = true;
    for i in 0..digits_needed {
        let q_digits: Vec<u64> = qs
            .iter()
            .map(|&q| {
                let mut n = q;
                for _ in 0..i {
                    n /= p;
                }
                n % p
            })
            .collect();
        let k_digit = kd.digit(i);
        if q_digits.iter().sum::<u64>() > k_digit {
            nonzero = false;
        }
        residue = (residue as u128 * multinomial_digit_mod_p(k_digit, &q_digits, p) as u128
            % p as u128) as u64;
    }
    // Beyond the window every q digit is 0 and each factor is 1, whether
    // the tail digit is 0 or p-1.
    debug_assert_eq!(residue != 0, nonzero);
    LucasResult { residue, nonzero }
}

/// The series over F_p(c) with no polynomial normal form, built by
/// iterating h = t^p + c h^p and verified against that identity to the
/// full precision before returning.
pub fn counterexample_series(p: u64, n_prec: i64) -> Result<FuncSeries> {
    if n_prec < (p * p) as i64 {
        return Err(Error::InvalidParameter(format!(
            "precision must reach p^2 = {}",
            p * p
        )));
    }
    let c = RatFunc::gen(p);
    let tp: FuncSeries =
        TruncatedSeries::monomial(RatFunc::constant(Fp::new(1, p)), p as i64, n_prec);

    let mut h = tp.clone();
    // Each substitution round multiplies the leading correct exponent by
    // p, so log_p(n_prec) + 1 rounds reach a fixpoint.
    let rounds = {
        let mut r = 0;
        let mut reach = p as i64;
        while reach < n_prec {
            reach *= p as i64;
            r += 1;
        }
        r + 1
    };
    for _ in 0..rounds {
        let mut hp = h.clone();
        for _ in 1..p {
            hp = hp.mul_ref(&h).truncate(n_prec);
        }
        h = tp.add_ref(&hp.scalar_mul(&c)).truncate(n_prec);
    }

    // Defining identity, exact to the full window.
    let mut hp = h.clone();
    for _ in 1..p {
        hp = hp.mul_ref(&h).truncate(n_prec);
    }
    let lhs = h.sub_ref(&hp.scalar_mul(&c));
    if !lhs.eq_to_common_prec(&tp) {
        return Err(Error::Unsupported(
            "counterexample construction failed its defining identity".into(),
        ));
    }
    Ok(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedCheck {
    pub generator: String,
    pub annihilated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedReport {
    pub m: u32,
    pub n: u32,
    pub p: u64,
    pub k: Option<u32>,
    pub checks: Vec<RestrictedCheck>,
    pub pass: bool,
}

/// Reduce a rational polynomial mod p (denominators must be units).
pub fn rat_poly_mod_p(poly: &crate::RatPoly, p: u64) -> Result<FpPoly> {
    let mut out = Vec::new();
    for (m, c) in poly.terms_desc() {
        out.push((m.clone(), Fp::from_rat(c, p)?));
    }
    Ok(MultiPoly::from_terms(out, poly.alphabet()))
}

/// Mod-p analogue of the center membership check: P_mk reduced mod p and
/// the top variables, under the restricted truncation that also kills
/// bracket indices >= p-1.
pub fn restricted_invariance_check(m: u32, n: u32, p: u64) -> Result<RestrictedReport> {
    if p == 2 {
        return Err(Error::InvalidParameter(
            "p = 2 is rejected: the coefficients of P_mk have denominators 2^j".into(),
        ));
    }
    if !crate::scalar::fp::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if n < 2 * m + 2 || (n as u64) > p - 2 {
        return Err(Error::InvalidParameter(format!(
            "restricted check needs 2m+2 <= n <= p-2, got m={m} n={n} p={p}"
        )));
    }

    let trunc = LieTruncation::restricted(m + 1, n + 1, p);
    let mut generators: Vec<(String, FpPoly)> = (0..=m)
        .map(|d| {
            let idx = (n - d) as usize;
            let poly = MultiPoly::from_terms(
                vec![(crate::poly::Monomial::var(idx), Fp::new(1, p))],
                Alphabet::L,
            );
            (format!("l{idx}"), poly)
        })
        .collect();
    let k = if n.is_multiple_of(2) {
        Some(n / 2 - m)
    } else {
        None
    };
    if let Some(k) = k {
        let spec = PmkSpec::new(m, k, rat(-2, 1))?;
        let pmk = pmk_partition(&spec)?;
        let reduced = rat_poly_mod_p(&pmk, p)?.map_vars(|i| (n as usize) - i, Alphabet::L);
        generators.push((format!("P_{m}{k} mod {p}"), reduced));
    }

    let mut checks = vec![];
    for (name, gen) in &generators {
        let mut ok = true;
        for i in trunc.range() {
            if !lie_action(&trunc, i, gen)?.is_zero() {
                ok = false;
                break;
            }
        }
        checks.push(RestrictedCheck {
            generator: name.clone(),
            annihilated: ok,
        });
    }
    let pass = checks.iter().all(|c| c.annihilated);
    Ok(RestrictedReport {
        m,
        n,
        p,
        k,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn fp_series(p: u64, ord: i64, vals: &[u64]) -> FpSeries {
        TruncatedSeries::new(ord, vals.iter().map(|&v| Fp::new(v, p)).collect())
    }

    #[test]
    fn invariants_examples() {
        // p=2, h = t^2 + t^3.
        let h = fp_series(2, 2, &[1, 1, 0, 0, 0, 0]);
        let inv = charp_invariants(&h, 2).unwrap();
        assert_eq!(inv.ord0, Some(2));
        assert_eq!(inv.md, Some(0));
        assert_eq!(inv.ord_md, Some(3));
        assert!(inv.certified);

        // p=2, h = t^4 + t^8.
        let h = fp_series(2, 4, &[1, 0, 0, 0, 1, 0, 0, 0]);
        let inv = charp_invariants(&h, 2).unwrap();
        assert_eq!(inv.md, Some(2));
        assert_eq!(inv.ord_md, Some(4));

        // p=3, h = 5 + t: constant subtracted.
        let h = fp_series(3, 0, &[2, 1, 0, 0]);
        let inv = charp_invariants(&h, 3).unwrap();
        assert_eq!(inv.ord0, Some(1));
        assert_eq!(inv.md, Some(0));
        assert_eq!(inv.ord_md, Some(1));

        // Constant to precision: md unbounded, flag lowered.
        let h = fp_series(3, 0, &[2, 0, 0]);
        let inv = charp_invariants(&h, 3).unwrap();
        assert_eq!(inv.md, None);
        assert!(!inv.certified);
    }

    #[test]
    fn width_examples() {
        let h = fp_series(2, 2, &[1, 1, 0, 0]);
        assert_eq!(width(&h, 2).unwrap(), 1);

        // Single term: ord_md = ord0, the otherwise branch.
        let h = fp_series(2, 3, &[1, 0, 0]);
        assert_eq!(width(&h, 2).unwrap(), 0);

        // t^4 + t^6 + t^7: both candidates give 1.
        let h = fp_series(2, 4, &[1, 0, 1, 1, 0, 0]);
        assert_eq!(width(&h, 2).unwrap(), 1);
    }

    #[test]
    fn width_is_stable_under_substitutions() {
        let h = fp_series(2, 2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let r = width_invariance_test(&h, 2, 50, 1234, true).unwrap();
        assert!(r.all_stable, "{r:?}");
        assert_eq!(r.base_width, 1);

        // The identity substitution is trivially stable.
        let id: FpSeries = TruncatedSeries::gen_to(12).scalar_mul(&Fp::new(1, 2));
        let moved = h.compose(&id).unwrap();
        assert_eq!(
            charp_invariants(&moved, 2).unwrap(),
            charp_invariants(&h, 2).unwrap()
        );
        assert_eq!(width(&moved, 2).unwrap(), width(&h, 2).unwrap());

        // Laurent series with scalings included.
        let h = fp_series(5, -2, &[3, 0, 1, 0, 2, 0, 0, 1, 0, 0, 0, 0]);
        let r = width_invariance_test(&h, 5, 40, 99, true).unwrap();
        assert!(r.all_stable, "{r:?}");

        // The raw-coefficient probe is *not* invariant.
        let h = fp_series(3, 1, &[1, 1, 1, 0, 0, 0, 0, 0]);
        let r = width_invariance_test(&h, 3, 30, 7, true).unwrap();
        assert!(r.all_stable);
        assert_eq!(r.probe_changed, Some(true));
    }

    #[test]
    fn lucas_examples() {
        // C(4; 2,2) = 6 = 0 mod 3.
        let r = lucas_multinomial(4, &[2, 2], 3);
        assert_eq!(
            r,
            LucasResult {
                residue: 0,
                nonzero: false
            }
        );

        // (-1 choose q) is odd for every q.
        for q in [0u64, 1, 2, 5, 17, 100] {
            let r = lucas_multinomial(-1, &[q], 2);
            assert!(r.nonzero);
            assert_eq!(r.residue, 1);
        }

        // Empty choice.
        let r = lucas_multinomial(123, &[0, 0], 7);
        assert_eq!(
            r,
            LucasResult {
                residue: 1,
                nonzero: true
            }
        );
    }

    #[test]
    fn lucas_matches_exact_multinomials() {
        use num::BigInt;
        let exact = |k: u64, qs: &[u64]| -> BigInt {
            // Product of binomials with falling factorials.
            let mut rest = BigInt::from(k);
            let mut acc = BigInt::one();
            let mut used = 0u64;
            for &q in qs {
                let mut num = BigInt::one();
                for i in 0..q {
                    num *= BigInt::from(k - used - i);
                }
                let mut den = BigInt::one();
                for i in 1..=q {
                    den *= BigInt::from(i);
                }
                acc *= num / den;
                used += q;
                rest -= BigInt::from(q);
            }
            acc
        };
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..1000 {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let k = rng.gen_range(0..=1_000_000u64);
            let nparts = rng.gen_range(1..=4);
            let mut qs = vec![];
            let mut left = k.min(40);
            for _ in 0..nparts {
                let q = rng.gen_range(0..=left.min(20));
                qs.push(q);
                left -= q;
            }
            let want: u64 = ((exact(k, &qs) % BigInt::from(p)) + BigInt::from(p))
                .to_string()
                .parse::<u64>()
                .map(|v| v % p)
                .unwrap();
            let got = lucas_multinomial(k as i64, &qs, p);
            assert_eq!(got.residue, want, "k={k} qs={qs:?} p={p}");
        }
    }

    #[test]
    fn lucas_negative_k_periodicity() {
        // k and k + p^B agree once B clears the digit window of qs.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let k = rng.gen_range(-1000..0i64);
            let qs: Vec<u64> = (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(0..30))
                .collect();
            let b = 12u32;
            let shifted = k + (p as i64).pow(b);
            assert_eq!(
                lucas_multinomial(k, &qs, p),
                lucas_multinomial(shifted, &qs, p),
                "k={k} qs={qs:?} p={p}"
            );
        }
    }

    #[test]
    fn counterexample_small() {
        // p=2: h = t^2 + c t^4 + c^3 t^8 + c^7 t^16 + O(t^20).
        let h = counterexample_series(2, 20).unwrap();
        let c = RatFunc::gen(2);
        assert_eq!(h.ord(), 2);
        assert!(h.coeff(2).unwrap().is_one());
        assert_eq!(h.coeff(4).unwrap(), c);
        assert_eq!(h.coeff(8).unwrap(), c.pow(3));
        assert_eq!(h.coeff(16).unwrap(), c.pow(7));
        for e in [3i64, 5, 6, 7, 9, 12, 15, 17, 19] {
            assert!(h.coeff(e).unwrap().is_zero());
        }

        // p=3: exponents 3, 9, 27 with c-powers 0, 1, 4.
        let h = counterexample_series(3, 30).unwrap();
        let c = RatFunc::gen(3);
        assert!(h.coeff(3).unwrap().is_one());
        assert_eq!(h.coeff(9).unwrap(), c);
        assert_eq!(h.coeff(27).unwrap(), c.pow(4));

        // Precision below p^2 rejected.
        assert!(counterexample_series(3, 8).is_err());
    }

    #[test]
    fn restricted_examples() {
        let r = restricted_invariance_check(0, 4, 7).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.k, Some(2));

        let r = restricted_invariance_check(1, 4, 11).unwrap();
        assert!(r.pass);

        let r = restricted_invariance_check(0, 6, 11).unwrap();
        assert!(r.pass);
        assert_eq!(r.k, Some(3));

        assert!(restricted_invariance_check(0, 4, 2).is_err());
        assert!(restricted_invariance_check(0, 8, 7).is_err());
    }

    #[test]
    fn padic_digits_of_negative_integers() {
        let d = PadicDigits::of_integer(-1, 2, 6);
        assert!((0..10).all(|i| d.digit(i) == 1));
        let d = PadicDigits::of_integer(-3, 5, 4);
        // -3 = ...444442 in base 5.
        assert_eq!(d.digit(0), 2);
        assert!((1..8).all(|i| d.digit(i) == 4));
    }
}

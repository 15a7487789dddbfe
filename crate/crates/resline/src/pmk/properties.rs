//! Closed-form property checks for P_mk: homogeneity and weight,
//! all-ones values, denominator LCMs, and nonzero-term counts, including
//! the resonance variants.

use num::{BigInt, One};
use serde::Serialize;

use crate::error::Result;
use crate::poly::{partition_count_max_len, partition_counts, weighted_checks};
use crate::scalar::{
    binary_digit_sum, denominator_lcm, double_factorial, rat, rat_binomial, Int, Rat,
};

use super::{pmk_partition, PmkSpec};

#[derive(Clone, Debug, Serialize)]
pub struct ValueCheck {
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PmkPropertiesReport {
    pub m: u32,
    pub k: u32,
    pub lambda: String,
    pub homogeneous_and_equalized: bool,
    pub all_ones: Option<ValueCheck>,
    pub denominator_lcm: Option<ValueCheck>,
    pub term_count: Option<ValueCheck>,
    pub pass: bool,
}

fn int_check(expected: Int, got: Int) -> ValueCheck {
    ValueCheck {
        pass: expected == got,
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

/// Expected all-ones value: the double-factorial forms at lambda = -2,
/// the binomial forms in general; only claimed for m = 0 or m >= k-1.
pub fn expected_all_ones(m: u32, k: u32, lambda: &Rat) -> Option<Rat> {
    let inv_lambda = lambda.recip();
    let sign = if k.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    };
    if m == 0 {
        let v = sign * rat_binomial(&inv_lambda, k);
        if lambda == &rat(-2, 1) {
            let alt = Rat::new(
                double_factorial(2 * k as i64 - 1),
                double_factorial(2 * k as i64),
            );
            debug_assert_eq!(v, alt, "double-factorial form must agree at lambda = -2");
        }
        Some(v)
    } else if m >= k - 1 {
        let v = sign * inv_lambda.clone() * rat_binomial(&inv_lambda, k - 1);
        if lambda == &rat(-2, 1) {
            let alt = Rat::new(
                double_factorial(2 * k as i64 - 3),
                double_factorial(2 * k as i64 - 2) * BigInt::from(2),
            );
            debug_assert_eq!(v, alt, "double-factorial form must agree at lambda = -2");
        }
        Some(v)
    } else {
        None
    }
}

/// Expected denominator LCM at lambda = -2: 2^(2k - s(k)) for m = 0 and
/// 2^(2k - s(k-1) - 1) for m > 0.
pub fn expected_denominator_lcm(m: u32, k: u32, lambda: &Rat) -> Option<Int> {
    if lambda != &rat(-2, 1) {
        return None;
    }
    let exp = if m == 0 {
        2 * k - binary_digit_sum(k as u64)
    } else if k == 1 {
        // 2k - s(k-1) - 1 with s(0) read as 0: P_m1 = x_(m+1)/2.
        1
    } else {
        2 * k - binary_digit_sum(k as u64 - 1) - 1
    };
    Some(BigInt::from(2).pow(exp))
}

/// Expected nonzero-term count: p(k) for m = 0 and p(0)+...+p(k-1) for
/// m >= k-1. At resonance -1/lambda = n < k a coefficient survives iff
/// the whole partition has length <= n, so the m = 0 count is p_n(k)
/// and the m >= k-1 count is sum of p_(n-1)(i) for i < k (the forced
/// part > m already spends one slot of the length budget).
pub fn expected_term_count(m: u32, k: u32, resonance: Option<u32>) -> Option<Int> {
    let resonant_n = match resonance {
        Some(n) if n < k => Some(n),
        _ => None,
    };
    if m == 0 {
        Some(match resonant_n {
            Some(n) => partition_count_max_len(k, n),
            None => partition_counts(k)[k as usize].clone(),
        })
    } else if m >= k - 1 {
        Some(
            (0..k)
                .map(|i| match resonant_n {
                    Some(n) => partition_count_max_len(i, n - 1),
                    None => partition_counts(i)[i as usize].clone(),
                })
                .sum(),
        )
    } else {
        None
    }
}

/// Run the full closed-form property suite against the partition-sum
/// construction.
pub fn pmk_properties(spec: &PmkSpec) -> Result<PmkPropertiesReport> {
    let (m, k) = (spec.m(), spec.k());
    let p = pmk_partition(spec)?;

    let weight = weighted_checks(&p, Some(k), (m + k) as u64);

    let all_ones = expected_all_ones(m, k, spec.lambda()).map(|expected| {
        let ones = vec![Rat::one(); (m + k + 1) as usize];
        let got = p.eval(&ones);
        ValueCheck {
            pass: expected == got,
            expected: expected.to_string(),
            got: got.to_string(),
        }
    });

    let denominator = expected_denominator_lcm(m, k, spec.lambda()).map(|expected| {
        let got = denominator_lcm(p.terms_desc().map(|(_, c)| c));
        int_check(expected, got)
    });

    let term_count = expected_term_count(m, k, spec.resonance())
        .map(|expected| int_check(expected, Int::from(p.nterms())));

    let pass = weight.pass
        && all_ones.as_ref().map(|c| c.pass).unwrap_or(true)
        && denominator.as_ref().map(|c| c.pass).unwrap_or(true)
        && term_count.as_ref().map(|c| c.pass).unwrap_or(true);

    Ok(PmkPropertiesReport {
        m,
        k,
        lambda: spec.lambda().to_string(),
        homogeneous_and_equalized: weight.pass,
        all_ones,
        denominator_lcm: denominator,
        term_count,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(m: u32, k: u32, num: i64, den: i64) -> PmkPropertiesReport {
        pmk_properties(&PmkSpec::new(m, k, rat(num, den)).unwrap()).unwrap()
    }

    #[test]
    fn p02_properties() {
        let r = report(0, 2, -2, 1);
        assert!(r.pass);
        assert_eq!(r.all_ones.as_ref().unwrap().got, "3/8");
        assert_eq!(r.denominator_lcm.as_ref().unwrap().got, "8");
        assert_eq!(r.term_count.as_ref().unwrap().got, "2");
    }

    #[test]
    fn p03_denominator() {
        let r = report(0, 3, -2, 1);
        assert!(r.pass);
        // 2^(6 - s(3)) = 2^4 = 16.
        assert_eq!(r.denominator_lcm.as_ref().unwrap().expected, "16");
    }

    #[test]
    fn p34_term_count() {
        let r = report(3, 4, -2, 1);
        assert!(r.pass);
        // p(0) + p(1) + p(2) + p(3) = 7.
        assert_eq!(r.term_count.as_ref().unwrap().expected, "7");
    }

    #[test]
    fn resonance_term_counts() {
        // lambda = -1/2 means resonance n = 2: p_2 counts.
        let r = report(0, 5, -1, 2);
        assert!(r.pass, "{r:?}");
        // p_2(5) = 3: (5), (4,1), (3,2).
        assert_eq!(r.term_count.as_ref().unwrap().expected, "3");

        // m >= k-1 at resonance n = 1: only the single long-part term
        // survives.
        let r = report(2, 2, -1, 1);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.term_count.as_ref().unwrap().expected, "1");

        // m >= k-1 at resonance n = 2.
        let r = report(4, 2, -1, 2);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.term_count.as_ref().unwrap().expected, "2");
    }

    #[test]
    fn sweep_small_parameters() {
        for (num, den) in [(-2i64, 1i64), (1, 2), (-1, 3), (3, 1), (-1, 1), (-1, 2)] {
            for m in 0..=4u32 {
                for k in 1..=6u32 {
                    let r = report(m, k, num, den);
                    assert!(r.pass, "failed at m={m} k={k} lambda={num}/{den}: {r:?}");
                }
            }
        }
    }
}

//! Truncated Lie-algebra actions on polynomial algebras and the center
//! membership check.
//!
//! The truncation L(m, n) has basis l_m, ..., l_(n-1) with
//! [l_i, l_j] = (j - i) l_(i+j) and l_(i+j) = 0 for i+j >= n; the
//! restricted mode additionally kills indices >= p-1. The action on
//! polynomials is T(l_i) P = sum_j [l_i, l_j] dP/dl_j.

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Alphabet, MultiPoly};
use crate::scalar::{rat, ExactScalar};
use crate::RatPoly;

use super::{pmk_partition, PmkSpec};

#[derive(Clone, Debug)]
pub struct LieTruncation {
    m: u32,
    n: u32,
    restricted_p: Option<u64>,
}

impl LieTruncation {
    pub fn new(m: u32, n: u32) -> Self {
        assert!(n > m, "need n > m");
        LieTruncation {
            m,
            n,
            restricted_p: None,
        }
    }

    /// Layer the restricted vanishing l_(i+j) = 0 for i+j >= p-1 on top
    /// of the n-truncation.
    pub fn restricted(m: u32, n: u32, p: u64) -> Self {
        assert!(n > m, "need n > m");
        LieTruncation {
            m,
            n,
            restricted_p: Some(p),
        }
    }

    pub fn range(&self) -> std::ops::Range<u32> {
        self.m..self.n
    }

    fn bracket_index_alive(&self, idx: u32) -> bool {
        if idx >= self.n {
            return false;
        }
        match self.restricted_p {
            Some(p) => (idx as u64) < p - 1,
            None => true,
        }
    }

    /// [l_i, l_j] as a polynomial (linear or zero).
    pub fn bracket<C: ExactScalar>(&self, i: u32, j: u32, context: &C) -> Result<MultiPoly<C>> {
        if i == j || !self.bracket_index_alive(i + j) {
            return Ok(MultiPoly::zero_in(Alphabet::L));
        }
        let coeff = context.embed_int(j as i64 - i as i64)?;
        Ok(MultiPoly::from_terms(
            vec![(crate::poly::Monomial::var((i + j) as usize), coeff)],
            Alphabet::L,
        ))
    }
}

/// T(l_i) P = sum_j [l_i, l_j] dP/dl_j over the truncation's basis.
pub fn lie_action<C: ExactScalar>(
    trunc: &LieTruncation,
    i: u32,
    p: &MultiPoly<C>,
) -> Result<MultiPoly<C>> {
    if i < trunc.m || i >= trunc.n {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            lo: trunc.m as i64,
            hi: trunc.n as i64 - 1,
        });
    }
    let out_of_range = p
        .terms_desc()
        .flat_map(|(mono, _)| mono.iter_vars())
        .map(|(v, _)| v as u32)
        .find(|&v| v < trunc.m || v >= trunc.n);
    if let Some(v) = out_of_range {
        return Err(Error::IndexOutOfRange {
            index: v as i64,
            lo: trunc.m as i64,
            hi: trunc.n as i64 - 1,
        });
    }
    let sample = match p.terms_desc().next() {
        Some((_, c)) => c.clone(),
        None => return Ok(MultiPoly::zero_in(Alphabet::L)),
    };
    let mut acc = MultiPoly::zero_in(Alphabet::L);
    for j in trunc.range() {
        let partial = p.derivative(j as usize)?;
        if partial.is_zero() {
            continue;
        }
        let br = trunc.bracket(i, j, &sample)?;
        if br.is_zero() {
            continue;
        }
        acc = acc + br.mul_ref(&partial);
    }
    Ok(acc)
}

/// The polynomial P_mk written in the Lie variables through x_i = l_(n-i),
/// with lambda = -2 (the square-root generating function).
pub fn pmk_in_lie_variables(m: u32, k: u32, n: u32) -> Result<RatPoly> {
    let spec = PmkSpec::new(m, k, rat(-2, 1))?;
    let p = pmk_partition(&spec)?;
    Ok(p.map_vars(|i| (n as usize) - i, Alphabet::L))
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterCheck {
    pub generator: String,
    pub annihilated: bool,
    /// First basis index whose action fails, if any.
    pub witness: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub m: u32,
    pub n: u32,
    pub k: Option<u32>,
    pub checks: Vec<CenterCheck>,
    pub pass: bool,
}

/// Verify that the claimed central generators of U(m+1, n+1) are
/// annihilated by every basis action of L(m+1, n+1): the top variables
/// l_n, ..., l_(n-m), and for even n also P_mk(l_n, ..., l_(n/2)) with
/// k = n/2 - m. Membership check only.
pub fn center_invariants_check(m: u32, n: u32) -> Result<CenterReport> {
    if n < 2 * m + 2 {
        return Err(Error::InvalidParameter(format!(
            "center check needs n >= 2m+2, got m={m} n={n}"
        )));
    }
    let trunc = LieTruncation::new(m + 1, n + 1);
    let mut generators: Vec<(String, RatPoly)> = (0..=m)
        .map(|d| {
            let idx = (n - d) as usize;
            (format!("l{idx}"), MultiPoly::var_in(idx, Alphabet::L))
        })
        .collect();
    let k = if n.is_multiple_of(2) {
        Some(n / 2 - m)
    } else {
        None
    };
    if let Some(k) = k {
        generators.push((format!("P_{m}{k}"), pmk_in_lie_variables(m, k, n)?));
    }

    let mut checks = vec![];
    for (name, gen) in &generators {
        let mut witness = None;
        for i in trunc.range() {
            if !lie_action(&trunc, i, gen)?.is_zero() {
                witness = Some(i);
                break;
            }
        }
        checks.push(CenterCheck {
            generator: name.clone(),
            annihilated: witness.is_none(),
            witness,
        });
    }
    let pass = checks.iter().all(|c| c.annihilated);
    Ok(CenterReport {
        m,
        n,
        k,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn l(i: usize) -> RatPoly {
        MultiPoly::var_in(i, Alphabet::L)
    }

    #[test]
    fn quadratic_invariant_of_l15() {
        // (1/2) l4 l2 - (1/8) l3^2 is killed by every action of L(1,5).
        let trunc = LieTruncation::new(1, 5);
        let p = l(4).mul_ref(&l(2)).mul_rat(&rat(1, 2)).unwrap()
            - l(3).pow(2).mul_rat(&rat(1, 8)).unwrap();
        for i in 1..5 {
            assert!(lie_action(&trunc, i, &p).unwrap().is_zero(), "action l{i}");
        }
        // And it is exactly P_02 under x_i = l_(4-i).
        assert_eq!(p, pmk_in_lie_variables(0, 2, 4).unwrap());
    }

    #[test]
    fn top_variable_is_always_central() {
        let trunc = LieTruncation::new(2, 9);
        let p = l(8);
        for i in 2..9 {
            assert!(lie_action(&trunc, i, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn small_bracket_expansions() {
        let trunc = LieTruncation::new(0, 3);
        assert!(lie_action(&trunc, 1, &l(1)).unwrap().is_zero());
        assert!(lie_action(&trunc, 1, &l(2)).unwrap().is_zero());
        assert!(lie_action(&trunc, 1, &l(1).mul_ref(&l(2)))
            .unwrap()
            .is_zero());
        // A moving example: T(l0) l1 = [l0, l1] = l1.
        assert_eq!(lie_action(&trunc, 0, &l(1)).unwrap(), l(1));
        // Out of range.
        assert!(lie_action(&trunc, 3, &l(1)).is_err());
        assert!(lie_action(&trunc, 1, &l(5)).is_err());
    }

    #[test]
    fn truncated_brackets_are_antisymmetric_and_jacobi() {
        let sample = rat_int(1);
        for (m, n) in [(0u32, 5u32), (1, 6), (2, 7)] {
            let trunc = LieTruncation::new(m, n);
            for i in m..n {
                for j in m..n {
                    let ij = trunc.bracket(i, j, &sample).unwrap();
                    let ji = trunc.bracket(j, i, &sample).unwrap();
                    assert!((ij.clone() + ji).is_zero(), "antisymmetry {i} {j}");
                    for k in m..n {
                        // Jacobi on basis triples: [[i,j],k] + [[j,k],i] + [[k,i],j] = 0.
                        let t1 = nested(&trunc, i, j, k);
                        let t2 = nested(&trunc, j, k, i);
                        let t3 = nested(&trunc, k, i, j);
                        assert!((t1 + t2 + t3).is_zero(), "jacobi {i} {j} {k}");
                    }
                }
            }
        }
    }

    /// [[l_i, l_j], l_k] expanded through the truncation.
    fn nested(trunc: &LieTruncation, i: u32, j: u32, k: u32) -> RatPoly {
        // [l_i, l_j] = (j-i) l_(i+j) (or 0); then bracket with l_k.
        if i == j || !trunc.bracket_index_alive(i + j) {
            return RatPoly::zero_in(Alphabet::L);
        }
        let inner = i + j;
        if inner == k || !trunc.bracket_index_alive(inner + k) {
            return RatPoly::zero_in(Alphabet::L);
        }
        let c = rat_int((j as i64 - i as i64) * (k as i64 - inner as i64));
        MultiPoly::var_in((inner + k) as usize, Alphabet::L)
            .mul_rat(&c)
            .unwrap()
    }

    #[test]
    fn center_checks_small_cases() {
        // (m=1, n=4): annihilates l4, l3, and P_11 = l2/2.
        let r = center_invariants_check(1, 4).unwrap();
        assert!(r.pass);
        assert_eq!(r.k, Some(1));
        assert_eq!(r.checks.len(), 3);

        // (m=1, n=6): k=2 invariant in l6..l3.
        let r = center_invariants_check(1, 6).unwrap();
        assert!(r.pass);
        assert_eq!(r.k, Some(2));

        // (m=0, n=2): L(1,3) is commutative.
        let r = center_invariants_check(0, 2).unwrap();
        assert!(r.pass);

        // Odd n: no P generator.
        let r = center_invariants_check(0, 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.k, None);

        // Parameter range violation.
        assert!(center_invariants_check(2, 5).is_err());
    }

    #[test]
    fn restricted_truncation_kills_high_indices() {
        let sample = crate::Fp::new(1, 5);
        let trunc = LieTruncation::restricted(0, 10, 5);
        // i + j = 4 >= p-1 = 4 dies even though 4 < n.
        assert!(trunc.bracket(1, 3, &sample).unwrap().is_zero());
        assert!(!trunc.bracket(1, 2, &sample).unwrap().is_zero());
    }
}

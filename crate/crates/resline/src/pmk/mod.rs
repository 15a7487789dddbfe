//! The invariant polynomials P_mk by three independent constructions,
//! their gradients, and the PDE checker.
//!
//! The three routes — generating function, partition sum, determinant /
//! one-form integration — share no code beyond the polynomial container;
//! their exact agreement is the backbone of the verification suite.

pub mod lie;
pub mod properties;
pub mod reference;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{
    enumerate_partitions, multinomial_general, Alphabet, Monomial, MultiPoly, PolyMatrix,
    PolyOneForm,
};
use crate::scalar::{rat_int, Rat};
use crate::series::TruncatedSeries;
use crate::{PolySeries, RatPoly};

/// Parameters of one polynomial P_mk with superscript -1/lambda.
#[derive(Clone, Debug, PartialEq)]
pub struct PmkSpec {
    m: u32,
    k: u32,
    lambda: Rat,
}

impl PmkSpec {
    pub fn new(m: u32, k: u32, lambda: Rat) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        Ok(PmkSpec { m, k, lambda })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    /// The series exponent -1/lambda.
    pub fn alpha(&self) -> Rat {
        -self.lambda.recip()
    }

    /// The resonance index n when -1/lambda is a positive integer.
    pub fn resonance(&self) -> Option<u32> {
        let a = self.alpha();
        if a.is_integer() && a.is_positive() {
            a.numer().try_into().ok()
        } else {
            None
        }
    }
}

fn x(i: u32) -> RatPoly {
    MultiPoly::var(i as usize)
}

/// Generating-function construction: the coefficient of z^(m+k) in
/// S^(-1/lambda) - S_m^(-1/lambda), divided exactly by x0^m, where
/// S(z) = 1 + sum_{i>=1} x_i x0^(i-1) z^i and S_m is its truncation to
/// i <= m.
pub fn pmk_generating(spec: &PmkSpec) -> Result<RatPoly> {
    let (m, k) = (spec.m as i64, spec.k as i64);
    let prec = m + k + 1;
    let alpha = spec.alpha();

    let coeff_at = |i: i64| -> RatPoly {
        if i == 0 {
            RatPoly::one()
        } else {
            x(i as u32).mul_ref(&x(0).pow(i as u32 - 1))
        }
    };
    let full: PolySeries = TruncatedSeries::new(0, (0..prec).map(coeff_at).collect());
    let head: PolySeries = TruncatedSeries::new(
        0,
        (0..prec)
            .map(|i| if i <= m { coeff_at(i) } else { RatPoly::zero() })
            .collect(),
    );

    let diff = full
        .pow_rational(&alpha)?
        .sub_ref(&head.pow_rational(&alpha)?);
    let target = diff.coeff(m + k)?;
    // Divisibility by x0^m always holds for these coefficients; a
    // failure here is an implementation bug and must abort, never
    // truncate.
    target.div_exact_var_pow(0, spec.m)
}

/// Partition-sum construction: sum over partitions of m+k with largest
/// part > m of the generalized multinomial of -1/lambda times the
/// matching monomial, with p0 = k - length.
pub fn pmk_partition(spec: &PmkSpec) -> Result<RatPoly> {
    let (m, k) = (spec.m, spec.k);
    let alpha = spec.alpha();
    let mut acc = RatPoly::zero_in(Alphabet::X);
    for part in enumerate_partitions(m + k, m) {
        let mults = part.multiplicities();
        let coeff = multinomial_general(&alpha, &mults);
        if coeff.is_zero() {
            continue;
        }
        let len = part.len() as u32;
        debug_assert!(len <= k, "largest part > m forces length <= k");
        let mut exps = vec![0u32; (m + k + 1) as usize];
        exps[0] = k - len;
        for (i, &p) in mults.iter().enumerate() {
            exps[i + 1] = p;
        }
        acc = acc + MultiPoly::from_terms(vec![(Monomial::from_exps(exps), coeff)], Alphabet::X);
    }
    Ok(acc)
}

/// The (k-1) x k structure matrix A: entry (r, c) is
/// ((k-1-r) lambda + (c-r)) x_(c-r) for c >= r (0-indexed), 0 below.
pub fn structure_matrix(k: u32, lambda: &Rat) -> PolyMatrix<Rat> {
    let k = k as usize;
    PolyMatrix::from_fn(k - 1, k, |r, c| {
        if c < r {
            return RatPoly::zero();
        }
        let factor =
            Rat::from_integer(((k - 1 - r) as i64).into()) * lambda + rat_int((c - r) as i64);
        x((c - r) as u32).mul_rat(&factor).unwrap()
    })
}

/// Overall prefactor 1 / ((k-1)! (-lambda)^k), or 1 / (k! (-lambda)^k)
/// for the m = 0 route.
fn det_prefactor(m: u32, k: u32, lambda: &Rat) -> Rat {
    let mut fact = Rat::one();
    let top = if m == 0 { k } else { k - 1 };
    for i in 2..=top as i64 {
        fact *= rat_int(i);
    }
    let mut pow = Rat::one();
    for _ in 0..k {
        pow *= -lambda.clone();
    }
    (fact * pow).recip()
}

/// Determinant construction. For m = 0 the x' row, for m >= k-1 the
/// plain x row; in between, the one-form det(dx over A) is expanded
/// along the dx row, checked for closedness and integrated.
pub fn pmk_determinant(spec: &PmkSpec) -> Result<RatPoly> {
    let (m, k) = (spec.m, spec.k);
    let a = structure_matrix(k, &spec.lambda);
    let pre = det_prefactor(m, k, &spec.lambda);

    if m == 0 {
        let row: Vec<RatPoly> = (1..=k)
            .map(|i| x(i).mul_rat(&rat_int(i as i64)).unwrap())
            .collect();
        return a.with_top_row(row).det()?.mul_rat(&pre);
    }
    if m >= k - 1 {
        let row: Vec<RatPoly> = (1..=k).map(|i| x(m + i)).collect();
        return a.with_top_row(row).det()?.mul_rat(&pre);
    }

    // One-form route: cofactors along the dx row.
    let mut components = vec![];
    for i in 1..=k {
        let minor = a.delete_col((i - 1) as usize).det()?;
        let signed = if i % 2 == 1 { minor } else { -minor };
        components.push(((m + i) as usize, signed));
    }
    let form = PolyOneForm::new(components);
    form.potential()?.mul_rat(&pre)
}

/// Claimed partial derivative dP_mk / dx_(m+i): the signed minor
/// (-1)^(i+1) det A_i under the shared prefactor.
pub fn pmk_gradient(spec: &PmkSpec, i: u32) -> Result<RatPoly> {
    let k = spec.k;
    if i < 1 || i > k {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            lo: 1,
            hi: k as i64,
        });
    }
    let a = structure_matrix(k, &spec.lambda);
    let pre = det_prefactor(1, k, &spec.lambda); // gradient prefactor never uses the m=0 variant
    let minor = a.delete_col((i - 1) as usize).det()?;
    let signed = if i % 2 == 1 { minor } else { -minor };
    signed.mul_rat(&pre)
}

/// Residuals of the linear PDE system given by the rows of A:
/// row j yields sum_i A[j][i] dP/dx_(m+i). All must vanish on P_mk.
pub fn pde_residual(p: &RatPoly, spec: &PmkSpec) -> Result<Vec<RatPoly>> {
    let (m, k) = (spec.m, spec.k);
    let a = structure_matrix(k, &spec.lambda);
    let mut out = vec![];
    for r in 0..(k - 1) as usize {
        let mut acc = RatPoly::zero_in(Alphabet::X);
        for c in 0..k as usize {
            let entry = a.at(r, c);
            if entry.is_zero() {
                continue;
            }
            let partial = p.derivative((m as usize) + c + 1)?;
            acc = acc + entry.mul_ref(&partial);
        }
        out.push(acc);
    }
    Ok(out)
}

/// At resonance -1/lambda = n < k the polynomial is divisible by
/// x0^(k-n); returns the quotient, the polynomial that stays
/// invariant at resonance. A division failure would falsify the
/// divisibility claim and aborts.
pub fn resonant_divisibility(m: u32, k: u32, n: u32) -> Result<RatPoly> {
    if n == 0 || n >= k {
        return Err(Error::InvalidParameter("resonance needs 0 < n < k".into()));
    }
    let spec = PmkSpec::new(m, k, Rat::new((-1).into(), (n as i64).into()))?;
    debug_assert_eq!(spec.resonance(), Some(n));
    let p = pmk_partition(&spec)?;
    p.div_exact_var_pow(0, k - n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::weighted_checks;
    use crate::scalar::rat;

    fn spec(m: u32, k: u32, num: i64, den: i64) -> PmkSpec {
        PmkSpec::new(m, k, rat(num, den)).unwrap()
    }

    fn poly_eq(a: &RatPoly, b: &RatPoly) -> bool {
        a == b
    }

    #[test]
    fn generating_matches_displays() {
        // P_02 at lambda = -2.
        let p = pmk_generating(&spec(0, 2, -2, 1)).unwrap();
        assert_eq!(p.to_string(), "1/2*x0*x2 - 1/8*x1^2");

        // P_m1 = -x_(m+1)/lambda for any lambda (here m = 1, lambda = 5/3).
        let p = pmk_generating(&spec(1, 1, 5, 3)).unwrap();
        assert_eq!(p, x(2).mul_rat(&rat(-3, 5)).unwrap());

        // P_13 at lambda = -2, display from the source formulas.
        let p = pmk_generating(&spec(1, 3, -2, 1)).unwrap();
        let expected = x(0).pow(2).mul_ref(&x(4)).mul_rat(&rat(1, 2)).unwrap()
            + x(0)
                .mul_ref(&x(1))
                .mul_ref(&x(3))
                .mul_rat(&rat(-1, 4))
                .unwrap()
            + x(0).mul_ref(&x(2).pow(2)).mul_rat(&rat(-1, 8)).unwrap()
            + x(1).pow(2).mul_ref(&x(2)).mul_rat(&rat(3, 16)).unwrap();
        assert!(poly_eq(&p, &expected));
    }

    #[test]
    fn partition_matches_displays() {
        // P_03 at lambda = -2.
        let p = pmk_partition(&spec(0, 3, -2, 1)).unwrap();
        let expected = x(0).pow(2).mul_ref(&x(3)).mul_rat(&rat(1, 2)).unwrap()
            + x(0)
                .mul_ref(&x(1))
                .mul_ref(&x(2))
                .mul_rat(&rat(-1, 4))
                .unwrap()
            + x(1).pow(3).mul_rat(&rat(1, 16)).unwrap();
        assert!(poly_eq(&p, &expected));

        // P_22 for general lambda = -3: -(1/lambda) x0 x4 + (lambda+1)/lambda^2 x1 x3.
        let p = pmk_partition(&spec(2, 2, -3, 1)).unwrap();
        let expected = x(0).mul_ref(&x(4)).mul_rat(&rat(1, 3)).unwrap()
            + x(1).mul_ref(&x(3)).mul_rat(&rat(-2, 9)).unwrap();
        assert!(poly_eq(&p, &expected));

        // Resonance n = 1 (lambda = -1) at (m, k) = (0, 2): single term x0 x2.
        let p = pmk_partition(&spec(0, 2, -1, 1)).unwrap();
        assert!(poly_eq(&p, &x(0).mul_ref(&x(2))));
        assert_eq!(p.nterms(), 1);
    }

    #[test]
    fn determinant_matches_displays() {
        // P_32: 2x2 determinant row route.
        let p = pmk_determinant(&spec(3, 2, -3, 1)).unwrap();
        let expected = x(0).mul_ref(&x(5)).mul_rat(&rat(1, 3)).unwrap()
            + x(1).mul_ref(&x(4)).mul_rat(&rat(-2, 9)).unwrap();
        assert!(poly_eq(&p, &expected));

        // P_02 via the x' row.
        let p = pmk_determinant(&spec(0, 2, -2, 1)).unwrap();
        assert_eq!(p.to_string(), "1/2*x0*x2 - 1/8*x1^2");

        // P_13 via the one-form route equals the partition sum.
        let s = spec(1, 3, -2, 1);
        assert!(poly_eq(
            &pmk_determinant(&s).unwrap(),
            &pmk_partition(&s).unwrap()
        ));
    }

    #[test]
    fn three_constructions_agree_on_a_sample() {
        for (m, k, num, den) in [
            (0u32, 1u32, -2i64, 1i64),
            (2, 3, 1, 2),
            (1, 4, -1, 3),
            (3, 2, 5, 1),
            (0, 4, -1, 1),
            (2, 5, -1, 2),
        ] {
            let s = spec(m, k, num, den);
            let a = pmk_generating(&s).unwrap();
            let b = pmk_partition(&s).unwrap();
            let c = pmk_determinant(&s).unwrap();
            assert!(poly_eq(&a, &b), "generating != partition at m={m} k={k}");
            assert!(poly_eq(&b, &c), "partition != determinant at m={m} k={k}");
            assert!(weighted_checks(&a, Some(k), (m + k) as u64).pass);
        }
    }

    #[test]
    fn gradient_equals_symbolic_partial() {
        for (m, k, num, den) in [
            (3u32, 2u32, 4i64, 1i64),
            (0, 1, -2, 1),
            (1, 3, -2, 1),
            (2, 4, 1, 2),
        ] {
            let s = spec(m, k, num, den);
            let p = pmk_partition(&s).unwrap();
            for i in 1..=k {
                let g = pmk_gradient(&s, i).unwrap();
                let d = p.derivative((m + i) as usize).unwrap();
                assert!(poly_eq(&g, &d), "gradient mismatch at m={m} k={k} i={i}");
            }
        }
        // Out-of-range index is rejected.
        assert!(pmk_gradient(&spec(0, 2, -2, 1), 3).is_err());
        // (m=0, k=1): dP/dx1 = -1/lambda.
        let g = pmk_gradient(&spec(0, 1, 2, 1), 1).unwrap();
        assert_eq!(g, MultiPoly::constant(rat(-1, 2)));
        // (m=1, k=3) i=3: dP_13/dx4 = x0^2/2 at lambda = -2.
        let g = pmk_gradient(&spec(1, 3, -2, 1), 3).unwrap();
        assert_eq!(g, x(0).pow(2).mul_rat(&rat(1, 2)).unwrap());
    }

    #[test]
    fn pde_residual_vanishes_on_pmk() {
        for (m, k, num, den) in [
            (0u32, 2u32, -2i64, 1i64),
            (1, 3, -2, 1),
            (2, 4, 1, 3),
            (0, 5, -1, 2),
        ] {
            let s = spec(m, k, num, den);
            let p = pmk_partition(&s).unwrap();
            for r in pde_residual(&p, &s).unwrap() {
                assert!(r.is_zero(), "PDE residual nonzero at m={m} k={k}");
            }
        }
        // Non-invariants leave a nonzero residual.
        let s = spec(0, 2, -2, 1);
        let bad = x(1).pow(2);
        assert!(pde_residual(&bad, &s).unwrap().iter().any(|r| !r.is_zero()));
        // Constants are annihilated.
        let c = MultiPoly::constant(rat_int(7));
        assert!(pde_residual(&c, &s).unwrap().iter().all(|r| r.is_zero()));
    }

    #[test]
    fn resonance_quotients() {
        // (m=0, k=2, n=1): P = x0 x2, quotient x2.
        assert_eq!(resonant_divisibility(0, 2, 1).unwrap(), x(2));
        // (m=1, k=2, n=1): quotient x3.
        assert_eq!(resonant_divisibility(1, 2, 1).unwrap(), x(3));
        // (m=0, k=3, n=2): quotient of a degree-3 polynomial by x0.
        let q = resonant_divisibility(0, 3, 2).unwrap();
        let s = spec(0, 3, -1, 2);
        let p = pmk_partition(&s).unwrap();
        assert!(poly_eq(&q.mul_ref(&x(0)), &p));
        assert!(resonant_divisibility(0, 3, 3).is_err());
    }

    #[test]
    fn zero_lambda_rejected() {
        assert!(PmkSpec::new(0, 2, Rat::zero()).is_err());
    }
}

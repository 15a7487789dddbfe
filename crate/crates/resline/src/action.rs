//! The action of the automorphism groups G_n on tensor fields, the
//! fractional-residue invariant, the bilinear pairing, and normal-form
//! reduction by order-by-order elimination.
//!
//! A tensor field h(t) t^mu (dt)^(-lambda) transforms under t -> g(t)
//! into h(g(t)) (g(t)/t)^mu g'(t)^(-lambda) in the same basis; with
//! g(t) = t + o(t^n), n >= 1, both unit factors are rational powers of
//! unit series, so everything stays inside exact rational arithmetic.

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rat};
use crate::series::TruncatedSeries;
use crate::RatSeries;

/// Element of F_(lambda, mu): coefficients x_0..x_(N-1) in the basis
/// e_k = t^(k+mu) (dt)^(-lambda), known to precision N.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField {
    lambda: Rat,
    mu: Rat,
    coeffs: Vec<Rat>,
}

impl TensorField {
    pub fn new(lambda: Rat, mu: Rat, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "tensor field needs at least x0");
        TensorField { lambda, mu, coeffs }
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// The coefficient series h(t) = sum x_k t^k.
    pub fn series(&self) -> RatSeries {
        TruncatedSeries::new(0, self.coeffs.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lambda": self.lambda.to_string(),
            "mu": self.mu.to_string(),
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Element of G_n: g(t) = t + sum_{i>n} g_i t^i, truncated.
#[derive(Clone, Debug)]
pub struct Automorphism {
    level: u32,
    series: RatSeries,
}

impl Automorphism {
    /// Wrap a series, checking membership in G_level: coefficient 1 at t
    /// and zeros through t^level.
    pub fn new(level: u32, series: RatSeries) -> Result<Self> {
        if level < 1 {
            return Err(Error::InvalidParameter(
                "automorphism level must be >= 1".into(),
            ));
        }
        if series.ord() != 1 || !series.coeff(1)?.is_one() {
            return Err(Error::InvalidParameter(
                "automorphism must start with t".into(),
            ));
        }
        for e in 2..=level as i64 {
            if e < series.prec() && !series.coeff(e)?.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "coefficient of t^{e} must vanish in G_{level}"
                )));
            }
        }
        Ok(Automorphism { level, series })
    }

    pub fn identity(level: u32, prec: i64) -> Self {
        Automorphism {
            level,
            series: TruncatedSeries::gen_to(prec),
        }
    }

    /// Build from tail coefficients g_(level+1), g_(level+2), ....
    pub fn from_tail(level: u32, tail: &[Rat], prec: i64) -> Result<Self> {
        let mut coeffs = vec![Rat::zero(); (prec - 1).max(0) as usize];
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("precision too small".into()));
        }
        coeffs[0] = Rat::one();
        for (i, c) in tail.iter().enumerate() {
            let e = level as usize + 1 + i;
            if e - 1 < coeffs.len() {
                coeffs[e - 1] = c.clone();
            }
        }
        Automorphism::new(level, TruncatedSeries::new(1, coeffs))
    }

    /// A single elementary map t + eps t^r.
    pub fn elementary(level: u32, r: i64, eps: Rat, prec: i64) -> Result<Self> {
        assert!(r as u32 > level && r > 1);
        let mut coeffs = vec![Rat::zero(); (prec - 1) as usize];
        coeffs[0] = Rat::one();
        if r - 1 < prec {
            coeffs[(r - 1) as usize] = eps;
        }
        Automorphism::new(level, TruncatedSeries::new(1, coeffs))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn series(&self) -> &RatSeries {
        &self.series
    }

    /// Standard composition (self o other)(t) = self(other(t)).
    pub fn after(&self, other: &Automorphism) -> Result<Automorphism> {
        let series = self.series.compose(&other.series)?;
        Automorphism::new(self.level.min(other.level), series)
    }

    /// Compositional inverse, solved order by order: each pass of
    /// h <- h - (g(h) - t) gains at least `level` correct orders because
    /// g'(t) = 1 + o(t^level).
    pub fn inverse(&self) -> Result<Automorphism> {
        let t = TruncatedSeries::gen_to(self.series.prec());
        let mut inv = t.clone();
        let steps = (self.series.prec() / self.level as i64).max(1) + 1;
        for _ in 0..steps {
            let err = self.series.compose(&inv)?.sub_ref(&t);
            if err.is_zero_to_prec() {
                break;
            }
            inv = inv.sub_ref(&err);
        }
        Automorphism::new(self.level, inv)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "level": self.level,
            "series": self.series.to_json(),
        })
    }
}

/// Deterministic pseudorandom element of G_n with integer coefficients
/// in -3..=3 for exponents n < i <= depth.
pub fn random_automorphism(n: u32, depth: u32, seed: u64) -> Automorphism {
    assert!(depth > n, "depth must exceed the level");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tail: Vec<Rat> = (n + 1..=depth)
        .map(|_| rat_int(rng.gen_range(-3..=3)))
        .collect();
    Automorphism::from_tail(n, &tail, depth as i64 + 1).expect("valid by construction")
}

/// Transform a tensor field by t -> g(t).
pub fn act(g: &Automorphism, t: &TensorField) -> Result<TensorField> {
    let h = t.series();
    let substituted = h.compose(g.series())?;
    let unit = g.series().shift(-1); // g(t)/t, a unit series
    let mu_factor = unit.pow_rational(&t.mu)?;
    let a = g.series().derivative()?;
    let lambda_factor = a.pow_rational(&(-t.lambda.clone()))?;
    let total = substituted.mul_ref(&mu_factor).mul_ref(&lambda_factor);

    let prec = total.prec();
    if prec < 1 {
        return Err(Error::PrecisionWindow {
            ord: total.ord(),
            prec,
            needed: 0,
        });
    }
    let coeffs = total.window(0, prec)?;
    Ok(TensorField::new(t.lambda.clone(), t.mu.clone(), coeffs))
}

/// The invariant x0^k res((h/x0)^(-1/lambda) t^(-k-1) dt) for a field
/// with mu = (k+1) lambda; equals P_0k at the coefficients.
pub fn fractional_residue(t: &TensorField, k: u32) -> Result<Rat> {
    if t.lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if t.mu != (Rat::from_integer((k as i64 + 1).into()) * &t.lambda) {
        return Err(Error::InvalidParameter(format!(
            "fractional residue needs mu = (k+1) lambda, got mu = {}",
            t.mu
        )));
    }
    let x0 = &t.coeffs[0];
    if x0.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let normalized = t.series().scalar_mul(&x0.recip());
    let alpha = -t.lambda.recip();
    let powered = normalized.pow_rational(&alpha)?;
    let aligned = powered.shift(-(k as i64) - 1);
    let res = aligned.residue()?;
    let mut scale = Rat::one();
    for _ in 0..k {
        scale *= x0;
    }
    Ok(res * scale)
}

/// Bilinear invariant res(T S) for lambda + lambda' = -1 and integer
/// mu + mu'.
pub fn pairing(t: &TensorField, s: &TensorField) -> Result<Rat> {
    if &t.lambda + &s.lambda != -Rat::one() {
        return Err(Error::IncompatiblePairing);
    }
    let mu_sum = &t.mu + &s.mu;
    if !mu_sum.is_integer() {
        return Err(Error::IncompatiblePairing);
    }
    let shift: i64 = mu_sum
        .numer()
        .try_into()
        .map_err(|_| Error::Unsupported("mu sum too large".into()))?;
    let product = t.series().mul_ref(&s.series()).shift(shift);
    product.residue()
}

/// Result of the greedy order-by-order elimination.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub canonical: TensorField,
    pub witness: Automorphism,
    /// The resonant index m+k left untouched, when mu = (m+k+1) lambda.
    pub resonant_index: Option<usize>,
    /// Flags the lambda = 0, mu a non-positive integer exceptional
    /// orbits of the classification; the tail is still reduced.
    pub exceptional: bool,
}

/// Reduce to the canonical representative under G_(m+1): kill x_j for
/// every non-resonant j > m by solving one linear equation per order;
/// the witness automorphism reproduces the output from the input.
pub fn normal_form(t: &TensorField, m: u32) -> Result<NormalForm> {
    if t.coeffs[0].is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let n = t.precision() as i64;
    let gprec = n + 1;
    let lambda = &t.lambda;
    let mu = &t.mu;

    // Resonant index j = m+k with mu = (j+1) lambda, if any.
    let resonant_index: Option<usize> = if !lambda.is_zero() {
        let ratio = mu / lambda; // j + 1
        if ratio.is_integer() {
            let j1: i64 = ratio.numer().try_into().unwrap_or(i64::MIN);
            if j1 >= m as i64 + 2 {
                Some((j1 - 1) as usize)
            } else {
                None
            }
        } else {
            None
        }
    } else {
        None
    };
    let exceptional = lambda.is_zero() && mu.is_integer() && !mu.is_positive();

    let mut current = t.clone();
    let mut witness = Automorphism::identity(m + 1, gprec);

    for j in (m as i64 + 1)..n {
        if Some(j as usize) == resonant_index {
            continue;
        }
        let xj = current.coeffs[j as usize].clone();
        if xj.is_zero() {
            continue;
        }

        let step = if lambda.is_zero() && mu.is_zero() {
            // Pure composition: the update through t + eps t^(j-d+1) is
            // eps * d * x_d with d the smallest nonzero tail index.
            let d = (1..current.coeffs.len())
                .find(|&i| !current.coeffs[i].is_zero() && (i as i64) < j)
                .filter(|&d| (d as i64) < j - m as i64);
            let Some(d) = d else { continue };
            let eps = -xj / (rat_int(d as i64) * &current.coeffs[d]);
            Automorphism::elementary(m + 1, j - d as i64 + 1, eps, gprec)?
        } else {
            let factor = mu - lambda * rat_int(j + 1);
            debug_assert!(!factor.is_zero(), "resonant index must have been skipped");
            let eps = -xj / (factor * &current.coeffs[0]);
            Automorphism::elementary(m + 1, j + 1, eps, gprec)?
        };

        current = act(&step, &current)?;
        debug_assert!(
            current.coeffs[j as usize].is_zero(),
            "elimination at {j} failed"
        );
        witness = witness.after(&step)?;
    }

    Ok(NormalForm {
        canonical: current,
        witness,
        resonant_index,
        exceptional,
    })
}

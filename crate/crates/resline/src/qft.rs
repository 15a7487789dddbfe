//! The conformal-field-theory recursion for the polynomials P_k in
//! u_1..u_k and its identification with P_0k at -1/lambda = 1-k.

use num::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::poly::{Alphabet, MultiPoly};
use crate::scalar::{rat, rat_int, Rat};
use crate::RatPoly;

fn u(i: u32) -> RatPoly {
    MultiPoly::var_in(i as usize, Alphabet::U)
}

/// P_2 .. P_kmax by the recursion
/// P_(k+1) = ((sum_i ((i+2) u_(i+1) - 2 u_1 u_i) dP_k/du_i)
///            - 2k u_1 P_k - sum_(i=2)^(k-1) P_i P_(k+1-i)) / (k+2),
/// with base case P_2 = u_2 - u_1^2. The returned vector is indexed so
/// that entry 0 is P_2.
pub fn qft_recursion(kmax: u32) -> Result<Vec<RatPoly>> {
    assert!(kmax >= 2, "recursion starts at k = 2");
    let p2 = u(2) - u(1).pow(2);
    let mut list = vec![p2];
    for k in 2..kmax {
        let pk = &list[(k - 2) as usize];
        let mut acc = RatPoly::zero_in(Alphabet::U);
        for i in 1..=k {
            let partial = pk.derivative(i as usize)?;
            if partial.is_zero() {
                continue;
            }
            let coeff = u(i + 1).mul_rat(&rat_int(i as i64 + 2))?
                - u(1).mul_ref(&u(i)).mul_rat(&rat_int(2))?;
            acc = acc + coeff.mul_ref(&partial);
        }
        acc = acc - u(1).mul_ref(pk).mul_rat(&rat_int(2 * k as i64))?;
        for i in 2..=(k - 1) {
            let a = &list[(i - 2) as usize];
            let b = &list[(k + 1 - i - 2) as usize];
            acc = acc - a.mul_ref(b);
        }
        list.push(acc.mul_rat(&rat(1, k as i64 + 2))?);
    }
    Ok(list)
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionIdentityReport {
    pub k: u32,
    pub recursion: String,
    pub from_pmk: String,
    pub pass: bool,
}

/// Check P_k(u) = 1/(1-k) P_0k(1, u_1, ..., u_k) where the superscript
/// -1/lambda equals 1-k, i.e. lambda = 1/(k-1).
pub fn recursion_identity_check(k: u32) -> Result<RecursionIdentityReport> {
    assert!(k >= 2);
    let recursion = qft_recursion(k)?.pop().unwrap();

    let lambda = Rat::new(1.into(), (k as i64 - 1).into());
    let spec = crate::pmk::PmkSpec::new(0, k, lambda)?;
    let p0k = crate::pmk::pmk_partition(&spec)?;
    let substituted = p0k
        .substitute_value(0, &Rat::from_integer(1.into()))
        .map_vars(|i| i, Alphabet::U)
        .mul_rat(&rat(1, 1 - k as i64))?;

    Ok(RecursionIdentityReport {
        k,
        pass: recursion == substituted,
        recursion: recursion.to_string(),
        from_pmk: substituted.to_string(),
    })
}

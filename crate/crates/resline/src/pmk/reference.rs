//! Hand-entered reference polynomials: the explicit closed-form families
//! P_m1 .. P_m4, both the numeric lambda = -2 displays and the general
//! lambda-coefficient displays. These are golden data for the
//! verification suite, kept independent of the three constructions.

use crate::scalar::{rat, rat_int, Rat};
use crate::RatPoly;

fn x(i: u32) -> RatPoly {
    crate::poly::MultiPoly::var(i as usize)
}

fn term(c: Rat, vars: &[(u32, u32)]) -> RatPoly {
    let mut p = RatPoly::constant(c);
    for &(v, e) in vars {
        p = p.mul_ref(&x(v).pow(e));
    }
    p
}

/// The lambda = -2 displays: Some for every (m, k) with k <= 4, by the
/// family rules (m = 0 special, small-m specials, then the stable form).
pub fn display_lambda_minus_two(m: u32, k: u32) -> Option<RatPoly> {
    let p = match (m, k) {
        (_, 1) => term(rat(1, 2), &[(m + 1, 1)]),
        (0, 2) => term(rat(1, 2), &[(0, 1), (2, 1)]) + term(rat(-1, 8), &[(1, 2)]),
        (_, 2) => term(rat(1, 2), &[(0, 1), (m + 2, 1)]) + term(rat(-1, 4), &[(1, 1), (m + 1, 1)]),
        (0, 3) => {
            term(rat(1, 2), &[(0, 2), (3, 1)])
                + term(rat(-1, 4), &[(0, 1), (1, 1), (2, 1)])
                + term(rat(1, 16), &[(1, 3)])
        }
        (1, 3) => {
            term(rat(1, 2), &[(0, 2), (4, 1)])
                + term(rat(-1, 4), &[(0, 1), (1, 1), (3, 1)])
                + term(rat(-1, 8), &[(0, 1), (2, 2)])
                + term(rat(3, 16), &[(1, 2), (2, 1)])
        }
        (_, 3) => {
            term(rat(1, 2), &[(0, 2), (m + 3, 1)])
                + term(rat(-1, 4), &[(0, 1), (1, 1), (m + 2, 1)])
                + term(rat(-1, 4), &[(0, 1), (2, 1), (m + 1, 1)])
                + term(rat(3, 16), &[(1, 2), (m + 1, 1)])
        }
        (0, 4) => {
            term(rat(1, 2), &[(0, 3), (4, 1)])
                + term(rat(-1, 4), &[(0, 2), (1, 1), (3, 1)])
                + term(rat(-1, 8), &[(0, 2), (2, 2)])
                + term(rat(3, 16), &[(0, 1), (1, 2), (2, 1)])
                + term(rat(-5, 128), &[(1, 4)])
        }
        (1, 4) => {
            term(rat(1, 2), &[(0, 3), (5, 1)])
                + term(rat(-1, 4), &[(0, 2), (1, 1), (4, 1)])
                + term(rat(-1, 4), &[(0, 2), (2, 1), (3, 1)])
                + term(rat(3, 16), &[(0, 1), (1, 2), (3, 1)])
                + term(rat(3, 16), &[(0, 1), (1, 1), (2, 2)])
                + term(rat(-5, 32), &[(1, 3), (2, 1)])
        }
        (2, 4) => {
            term(rat(1, 2), &[(0, 3), (6, 1)])
                + term(rat(-1, 4), &[(0, 2), (1, 1), (5, 1)])
                + term(rat(-1, 4), &[(0, 2), (2, 1), (4, 1)])
                + term(rat(-1, 8), &[(0, 2), (3, 2)])
                + term(rat(3, 16), &[(0, 1), (1, 2), (4, 1)])
                + term(rat(3, 8), &[(0, 1), (1, 1), (2, 1), (3, 1)])
                + term(rat(-5, 32), &[(1, 3), (3, 1)])
        }
        (_, 4) => {
            term(rat(1, 2), &[(0, 3), (m + 4, 1)])
                + term(rat(-1, 4), &[(0, 2), (1, 1), (m + 3, 1)])
                + term(rat(-1, 4), &[(0, 2), (2, 1), (m + 2, 1)])
                + term(rat(-1, 4), &[(0, 2), (3, 1), (m + 1, 1)])
                + term(rat(3, 16), &[(0, 1), (1, 2), (m + 2, 1)])
                + term(rat(3, 8), &[(0, 1), (1, 1), (2, 1), (m + 1, 1)])
                + term(rat(-5, 32), &[(1, 3), (m + 1, 1)])
        }
        _ => return None,
    };
    Some(p)
}

/// The general-lambda displays for k <= 4, as exact functions of lambda.
pub fn display_general_lambda(m: u32, k: u32, lambda: &Rat) -> Option<RatPoly> {
    let l = lambda.clone();
    let one = Rat::from_integer(1.into());
    // Shorthands for the coefficient ladder of the displays.
    let c1 = -l.recip(); // -1/lambda
    let c2 = (l.clone() + &one) / (l.clone() * &l); // (lambda+1)/lambda^2
    let c3 =
        (l.clone() + &one) * (l.clone() * rat_int(2) + &one) / (l.clone() * &l * &l * rat_int(2)); // (l+1)(2l+1)/(2 l^3)
    let c4 = (l.clone() + &one) * (l.clone() * rat_int(2) + &one) * (l.clone() * rat_int(3) + &one)
        / (l.clone() * &l * &l * &l * rat_int(6)); // (l+1)(2l+1)(3l+1)/(6 l^4)

    let p = match (m, k) {
        (_, 1) => term(c1, &[(m + 1, 1)]),
        (0, 2) => term(c1, &[(0, 1), (2, 1)]) + term(c2.clone() / rat_int(2), &[(1, 2)]),
        (_, 2) => term(c1, &[(0, 1), (m + 2, 1)]) + term(c2, &[(1, 1), (m + 1, 1)]),
        (0, 3) => {
            term(c1, &[(0, 2), (3, 1)])
                + term(c2, &[(0, 1), (1, 1), (2, 1)])
                + term(-c3 / rat_int(3), &[(1, 3)])
        }
        (1, 3) => {
            term(c1, &[(0, 2), (4, 1)])
                + term(c2.clone(), &[(0, 1), (1, 1), (3, 1)])
                + term(c2 / rat_int(2), &[(0, 1), (2, 2)])
                + term(-c3, &[(1, 2), (2, 1)])
        }
        (_, 3) => {
            term(c1, &[(0, 2), (m + 3, 1)])
                + term(c2.clone(), &[(0, 1), (1, 1), (m + 2, 1)])
                + term(c2, &[(0, 1), (2, 1), (m + 1, 1)])
                + term(-c3, &[(1, 2), (m + 1, 1)])
        }
        (0, 4) => {
            term(c1, &[(0, 3), (4, 1)])
                + term(c2.clone(), &[(0, 2), (1, 1), (3, 1)])
                + term(c2 / rat_int(2), &[(0, 2), (2, 2)])
                + term(-c3, &[(0, 1), (1, 2), (2, 1)])
                + term(c4 / rat_int(4), &[(1, 4)])
        }
        (1, 4) => {
            term(c1, &[(0, 3), (5, 1)])
                + term(c2.clone(), &[(0, 2), (1, 1), (4, 1)])
                + term(c2, &[(0, 2), (2, 1), (3, 1)])
                + term(-c3.clone(), &[(0, 1), (1, 2), (3, 1)])
                + term(-c3, &[(0, 1), (1, 1), (2, 2)])
                + term(c4, &[(1, 3), (2, 1)])
        }
        (2, 4) => {
            term(c1, &[(0, 3), (6, 1)])
                + term(c2.clone(), &[(0, 2), (1, 1), (5, 1)])
                + term(c2.clone(), &[(0, 2), (2, 1), (4, 1)])
                + term(c2 / rat_int(2), &[(0, 2), (3, 2)])
                + term(-c3.clone(), &[(0, 1), (1, 2), (4, 1)])
                + term(-c3 * rat_int(2), &[(0, 1), (1, 1), (2, 1), (3, 1)])
                + term(c4, &[(1, 3), (3, 1)])
        }
        (_, 4) => {
            term(c1, &[(0, 3), (m + 4, 1)])
                + term(c2.clone(), &[(0, 2), (1, 1), (m + 3, 1)])
                + term(c2.clone(), &[(0, 2), (2, 1), (m + 2, 1)])
                + term(c2, &[(0, 2), (3, 1), (m + 1, 1)])
                + term(-c3.clone(), &[(0, 1), (1, 2), (m + 2, 1)])
                + term(-c3 * rat_int(2), &[(0, 1), (1, 1), (2, 1), (m + 1, 1)])
                + term(c4, &[(1, 3), (m + 1, 1)])
        }
        _ => return None,
    };
    Some(p)
}

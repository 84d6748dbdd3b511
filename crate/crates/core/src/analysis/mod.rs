//! Chebyshev product family, numeric irrationality-exponent evidence and the
//! near-exception identity.

pub mod decimal;
mod evidence;

pub use evidence::{approx_exponent, Evidence, EvidenceRecord, WARM_UP};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{Poly, RatPoly};

/// Tₗ by T₁ = x, T₂ = 2x²−1, Tₗ = 2x·Tₗ₋₁ − Tₗ₋₂.
pub fn chebyshev(l: u32) -> Result<Poly> {
    if l == 0 {
        return Err(Error::InvalidArgument("chebyshev index starts at 1".into()));
    }
    let two_x = Poly::monomial(2, 1);
    let (mut prev, mut cur) = (Poly::one(), Poly::x());
    for _ in 1..l {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// p mod x(x²−1).
pub fn residue_mod_cubic(p: &Poly) -> Poly {
    let m = Poly::from_i64(&[0, -1, 0, 1]);
    p.divrem_int(&m)
        .expect("nonzero divisor")
        .expect("monic divisor")
        .1
}

/// Tₗ, provided `given` is congruent to it modulo x(x²−1).
pub fn chebyshev_compose(given: &Poly, l: u32) -> Result<Poly> {
    let t = chebyshev(l)?;
    if residue_mod_cubic(&t) != residue_mod_cubic(given) {
        return Err(Error::InvalidArgument(format!(
            "{given} is not congruent to T_{l} modulo x(x^2-1)"
        )));
    }
    Ok(t)
}

/// 4x³ + 6x² − 3/2.
pub fn near_exception_poly() -> RatPoly {
    RatPoly::from_fracs(&[(-3, 2), (0, 1), (6, 1), (4, 1)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NearException {
    pub lhs: String,
    pub rhs: String,
    pub agree_digits: usize,
    pub precision: usize,
}

/// Upper bound on rendered fractional digits.
pub const NEAR_EXCEPTION_MAX_DIGITS: usize = 20_000;

/// Compare ∏ⱼ₌₀ⁿ(1 + 1/fⱼ(M)) for f = 4x³+6x²−3/2 with √((2M+3)/(2M−1)).
pub fn near_exception(m: &BigInt, n: usize) -> Result<NearException> {
    let ratio = BigRational::new(m * 2 + 3, m * 2 - 1);
    if m == &-BigInt::one() || m.is_zero() {
        return Err(Error::Precondition(format!(
            "M = {m}: (2M+3)/(2M-1) is not positive and the orbit hits {m}"
        )));
    }
    let f = near_exception_poly();
    let mut v = BigRational::from_integer(m.clone());
    let mut lhs = BigRational::one();
    for j in 0..=n {
        if v.is_zero() || v == -BigRational::one() {
            return Err(Error::OrbitViolation {
                index: j,
                value: v.to_string(),
            });
        }
        lhs *= (&v + BigRational::one()) / &v;
        if j < n {
            v = f.eval(&v);
        }
    }
    let diff = (&lhs * &lhs - &ratio).abs();
    let precision = if diff.is_zero() {
        NEAR_EXCEPTION_MAX_DIGITS
    } else {
        let est = -decimal::ln_rational(&(diff / &ratio)) / std::f64::consts::LN_10;
        (est.max(0.0) as usize + 10).min(NEAR_EXCEPTION_MAX_DIGITS)
    };
    let lhs = decimal::fixed(&lhs, precision);
    let rhs = decimal::sqrt_fixed(&ratio, precision);
    Ok(NearException {
        agree_digits: decimal::matching_digits(&lhs, &rhs),
        lhs,
        rhs,
        precision,
    })
}

//! Exact polynomial and rational-function arithmetic over ℤ and ℚ,
//! polynomial iteration, and truncation of the product ∏(1 + 1/fᵢ).

pub mod guard;
mod mul;
mod poly;
mod ratfunc;
mod ratpoly;

pub use poly::Poly;
pub use ratfunc::{normalize, RatFunc};
pub use ratpoly::RatPoly;

use crate::error::{Error, Result};

/// Result of [`poly_divrem`]: a = quotient·b + remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivRem {
    pub quotient: RatPoly,
    pub remainder: RatPoly,
    /// Whether the quotient has integer coefficients.
    pub integral: bool,
}

/// Division with remainder over ℚ with an integrality flag.
pub fn poly_divrem(a: &RatPoly, b: &RatPoly) -> Result<DivRem> {
    let (quotient, remainder) = a.divrem(b)?;
    let integral = quotient.is_integral();
    Ok(DivRem {
        quotient,
        remainder,
        integral,
    })
}

pub fn compose(outer: &Poly, inner: &Poly) -> Poly {
    outer.compose(inner)
}

pub fn iterate(f: &Poly, n: usize) -> Result<Poly> {
    f.iterate(n)
}

/// The iterates f₀ = x, f₁, …, fₙ.
pub fn iterates(f: &Poly, n: usize) -> Result<Vec<Poly>> {
    guard::check_iterate(f, n)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::x());
    for i in 0..n {
        let next = f.compose(&out[i]);
        out.push(next);
    }
    Ok(out)
}

/// Πₙ = ∏ᵢ₌₀ⁿ (1 + 1/fᵢ) in lowest terms.
pub fn product_truncate(f: &Poly, n: usize) -> Result<RatFunc> {
    product_from_iterates(&iterates(f, n)?)
}

/// Π over the given iterates. Each step multiplies by (fᵢ+1)/fᵢ; since the
/// running product is reduced and fᵢ, fᵢ+1 are coprime, cancelling
/// gcd(num, fᵢ) and gcd(fᵢ+1, den) leaves the result in lowest terms.
pub fn product_from_iterates(iterates: &[Poly]) -> Result<RatFunc> {
    let mut acc = RatFunc::from_poly(Poly::one());
    for (i, fi) in iterates.iter().enumerate() {
        if fi.is_zero() {
            return Err(Error::ZeroIterate { index: i });
        }
        acc = acc.mul(&RatFunc::one_plus_inverse(fi)?);
    }
    Ok(acc)
}

//! Dense univariate polynomials over the integers.
//!
//! `Poly` stores coefficients in ascending degree order: `coeffs[i]` is the
//! coefficient of x^i. The vector is empty for the zero polynomial and the
//! last element is nonzero otherwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::guard;
use super::ratpoly::RatPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// c·x^deg
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        Poly::from_coeffs(coeffs)
    }

    /// Build from ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Number of coefficient slots, used for resource estimates.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// outer(inner(x)), by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc = acc.add_constant(c);
        }
        acc
    }

    pub fn add_constant(mut self, c: &BigInt) -> Poly {
        if self.coeffs.is_empty() {
            self.coeffs.push(c.clone());
        } else {
            self.coeffs[0] += c;
        }
        self.trim();
        self
    }

    /// n-th iterate: f₀ = x, fₙ = f(fₙ₋₁). Subject to the global resource guard.
    pub fn iterate(&self, n: usize) -> Result<Poly> {
        guard::check_iterate(self, n)?;
        let mut acc = Poly::x();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Divide every coefficient by `k`; the caller guarantees exactness.
    pub(crate) fn div_scalar_exact(&self, k: &BigInt) -> Poly {
        if k.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    /// Long division in ℤ[x]. Returns `None` as soon as a quotient coefficient
    /// would be non-integral.
    pub fn divrem_int(&self, b: &Poly) -> Result<Option<(Poly, Poly)>> {
        let db = b.degree().ok_or(Error::ZeroDivisor)?;
        let lb = b.leading_coeff().unwrap();
        let Some(da) = self.degree() else {
            return Ok(Some((Poly::zero(), Poly::zero())));
        };
        if da < db {
            return Ok(Some((Poly::zero(), self.clone())));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lb);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[k + j] -= &q * bc;
            }
            quot[k] = q;
        }
        rem.truncate(db);
        Ok(Some((Poly::from_coeffs(quot), Poly::from_coeffs(rem))))
    }

    /// Exact quotient self / b in ℤ[x], or `None` if b does not divide self.
    pub fn div_exact(&self, b: &Poly) -> Result<Option<Poly>> {
        Ok(match self.divrem_int(b)? {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        })
    }

    /// Remainder of self modulo b, computed over ℚ. Used for congruence tests
    /// against monic-up-to-sign moduli, where the result stays integral.
    pub fn rem_rational(&self, b: &Poly) -> Result<RatPoly> {
        let (_, r) = RatPoly::from(self).divrem(&RatPoly::from(b))?;
        Ok(r)
    }

    /// A scalar multiple of the pseudo-remainder of self by b. Only the
    /// leading coefficient is scaled, and only when the exact step fails, so the
    /// result is some c·(self mod b) with c ∈ ℤ \ {0}.
    fn sparse_pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > db && !rem.is_empty() {
            let top_idx = rem.len() - 1;
            let top = rem[top_idx].clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let shift = top_idx - db;
            let (q, r) = top.div_rem(&lb);
            let q = if r.is_zero() {
                q
            } else {
                for c in rem.iter_mut() {
                    *c *= &lb;
                }
                top
            };
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * bc;
            }
            rem.pop();
        }
        Poly::from_coeffs(rem)
    }

    /// Greatest common divisor in ℤ[x], primitive Euclidean algorithm with
    /// content tracking. The result has positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.sparse_pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&c)
    }

    /// p(−x−1)
    pub fn reflect_argument(&self) -> Poly {
        self.compose(&Poly::from_i64(&[-1, -1]))
    }

    pub fn to_ratpoly(&self) -> RatPoly {
        RatPoly::from(self)
    }
}

impl From<BigInt> for Poly {
    fn from(c: BigInt) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        super::mul::mul_coeffs(&self.coeffs, &rhs.coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    /// Descending powers with explicit operators, e.g. `x^3 + 3*x^2 + 2*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn compose_binomial() {
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn compose_cubic_with_itself() {
        // x³+x² composed with itself, expanded by hand:
        // (x³+x²)³ + (x³+x²)² = x⁹+3x⁸+3x⁷+x⁶ + x⁶+2x⁵+x⁴
        let f = p(&[0, 0, 1, 1]);
        let expect = p(&[0, 0, 0, 0, 1, 2, 2, 3, 3, 1]);
        let got = f.compose(&f);
        assert_eq!(got, expect);
        assert_eq!(got.degree(), Some(9));
        assert!(got.coeff(0).is_zero());
    }

    #[test]
    fn iterate_basics() {
        assert_eq!(p(&[0, 0, 1]).iterate(3).unwrap(), Poly::monomial(1, 8));
        assert_eq!(p(&[7, 3, 1]).iterate(0).unwrap(), Poly::x());
        let f = p(&[0, 0, 1, 1]);
        assert_eq!(f.iterate(2).unwrap(), f.compose(&f));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn integer_division() {
        let (q, r) = p(&[0, 0, 0, 1]).divrem_int(&p(&[0, 1])).unwrap().unwrap();
        assert_eq!(q, p(&[0, 0, 1]));
        assert!(r.is_zero());
        assert!(p(&[0, -1, -1]).divrem_int(&p(&[1, 2])).unwrap().is_none());
        assert_eq!(p(&[1]).divrem_int(&Poly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn gcd_cases() {
        // gcd(x³+x², x⁵+x⁴) = x²(x+1)
        let g = p(&[0, 0, 1, 1]).gcd(&p(&[0, 0, 0, 0, 1, 1]));
        assert_eq!(g, p(&[0, 0, 1, 1]));
        // gcd(2x²−2, 2x−2) = 2(x−1)
        assert_eq!(p(&[-2, 0, 2]).gcd(&p(&[-2, 2])), p(&[-2, 2]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[0, 1])), Poly::one());
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p(&[0, 2, 3, 1]).to_string(), "x^3 + 3*x^2 + 2*x");
        assert_eq!(p(&[-2, -2, -1]).to_string(), "-x^2 - 2*x - 2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[-1]).to_string(), "-1");
    }

    #[test]
    fn reflection_of_square() {
        assert_eq!(p(&[0, 0, 1]).reflect_argument(), p(&[1, 2, 1]));
    }
}

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::Poly;
use crate::error::{Error, Result};

/// A quotient of two integer polynomials kept in lowest terms: gcd-cancelled,
/// content-reduced, denominator with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Normalizing constructor.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        normalize(num, den)
    }

    /// Wrap a pair already known to be in lowest terms. Only the sign and
    /// content conventions are enforced.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(reduce_content(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    /// (f + 1) / f
    pub fn one_plus_inverse(f: &Poly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::from_coprime(f + &Poly::one(), f.clone())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        // Cross-cancel first so the gcds stay small.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = exact(&self.num, &g1);
        let d = exact(&other.den, &g1);
        let c = exact(&other.num, &g2);
        let b = exact(&self.den, &g2);
        reduce_content(&a * &c, &b * &d)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        normalize(num, den).expect("product of nonzero denominators")
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::from_coprime(self.den.clone(), self.num.clone())
    }

    /// Value equality by cross multiplication; does not rely on normalization.
    pub fn same_value(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

fn exact(a: &Poly, g: &Poly) -> Poly {
    a.div_exact(g)
        .expect("gcd is nonzero")
        .expect("gcd divides its argument")
}

fn reduce_content(num: Poly, den: Poly) -> RatFunc {
    if num.is_zero() {
        return RatFunc {
            num,
            den: Poly::one(),
        };
    }
    let mut c = num.content().gcd(&den.content());
    if den.leading_coeff().is_some_and(Signed::is_negative) {
        c = -c;
    }
    if c.is_one() {
        return RatFunc { num, den };
    }
    RatFunc {
        num: num.div_scalar_exact(&c),
        den: den.div_scalar_exact(&c),
    }
}

/// Cancel the polynomial gcd and the integer content, and make the
/// denominator's leading coefficient positive.
pub fn normalize(num: Poly, den: Poly) -> Result<RatFunc> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RatFunc {
            num,
            den: Poly::one(),
        });
    }
    let g = num.gcd(&den);
    let (num, den) = if g.is_constant() {
        (num, den)
    } else {
        (exact(&num, &g), exact(&den, &g))
    };
    Ok(reduce_content(num, den))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn normalize_examples() {
        let r = normalize(p(&[-2, 0, 2]), p(&[-2, 2])).unwrap();
        assert_eq!((r.num(), r.den()), (&p(&[1, 1]), &Poly::one()));

        let r = normalize(p(&[0, -1]), p(&[0, 0, -1])).unwrap();
        assert_eq!((r.num(), r.den()), (&Poly::one(), &p(&[0, 1])));

        let r = normalize(p(&[0, 0, 0, 1, 1]), p(&[0, 0, 0, 0, 0, 1, 1])).unwrap();
        assert_eq!((r.num(), r.den()), (&Poly::one(), &p(&[0, 0, 1])));

        assert_eq!(normalize(p(&[1]), Poly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn normalize_is_idempotent() {
        let r = normalize(p(&[3, 9, 6]), p(&[-6, 0, 6])).unwrap();
        let again = normalize(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(r, again);
        assert!(r.same_value(&RatFunc { num: p(&[3, 9, 6]), den: p(&[-6, 0, 6]) }));
    }

    #[test]
    fn multiplication_cancels() {
        let a = RatFunc::one_plus_inverse(&Poly::x()).unwrap();
        let b = RatFunc::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(a.mul(&b), RatFunc::from_poly(Poly::one()));
    }
}

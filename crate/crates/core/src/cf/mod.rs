//! Continued fractions over ℚ(x): Euclidean expansion, convergent matrices,
//! folding and the four doubling symmetries.

mod expansion;

pub use expansion::{
    convergents, final_convergent, value_of, CfExpansion, ConvergentMatrix, Quotient,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polycore::{normalize, Poly, RatFunc, RatPoly};

/// Output of [`euclid_expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Euclid {
    pub cf: CfExpansion,
    /// 1-based position (the head is position 1) of the first quotient with a
    /// non-integer coefficient.
    pub first_non_integral: Option<usize>,
}

/// Continued fraction of `r` by repeated division with remainder.
///
/// Works over ℤ[x] while every quotient is integral and falls back to exact
/// rationals from the first non-integral step on.
pub fn euclid_expand(r: &RatFunc) -> Result<Euclid> {
    let mut a = r.num().clone();
    let mut b = r.den().clone();
    if b.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let mut quotients: Vec<Quotient> = Vec::new();
    while let Some((q, rem)) = a.divrem_int(&b)? {
        quotients.push(Quotient::Int(q));
        if rem.is_zero() {
            return Ok(finish(quotients, None));
        }
        a = std::mem::replace(&mut b, rem);
    }
    let first = quotients.len() + 1;
    let mut a = RatPoly::from(a);
    let mut b = RatPoly::from(b);
    loop {
        let (q, rem) = a.divrem(&b)?;
        quotients.push(Quotient::from(q));
        if rem.is_zero() {
            return Ok(finish(quotients, Some(first)));
        }
        a = std::mem::replace(&mut b, rem);
    }
}

fn finish(quotients: Vec<Quotient>, first_non_integral: Option<usize>) -> Euclid {
    let mut it = quotients.into_iter();
    let head = it.next().expect("at least one division step");
    Euclid {
        cf: CfExpansion::new(head, it.collect()).expect("Euclid quotients after the head are nonzero"),
        first_non_integral,
    }
}

/// For deg f = 2: the number k of word quotients of Sₙ that Sₙ₊₁ is
/// guaranteed to start with, i.e. the largest k with
/// deg a₁ + … + deg aₖ₊₁ ≤ 2ⁿ.
pub fn degree_two_stable_prefix(cf: &CfExpansion, n: usize) -> usize {
    let bound = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
    let mut total = 0u128;
    let mut k = 0;
    for (i, q) in cf.word().iter().enumerate() {
        total += q.degree().unwrap_or(0) as u128;
        if total > bound {
            break;
        }
        k = i;
    }
    k
}

/// Folding: [a₀; w] ↦ [a₀; w, Y, −rev(w)].
pub fn fold(cf: &CfExpansion, y: &Quotient) -> Result<CfExpansion> {
    if y.is_zero() {
        return Err(Error::InvalidArgument("Y must be nonzero".into()));
    }
    let mut out = cf.clone();
    out.push(y.clone());
    for q in cf.word().iter().rev() {
        out.push(-q);
    }
    Ok(out)
}

/// The four doubling symmetries for an expansion with head 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoublingVariant {
    /// [1; w, Y, −w]
    A,
    /// [1; w, Y, −rev(w), −1]
    B,
    /// [1; w, Y, rev(w), 1]
    C,
    /// [1; w, Y, w]
    D,
}

impl fmt::Display for DoublingVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DoublingVariant::A => "a",
            DoublingVariant::B => "b",
            DoublingVariant::C => "c",
            DoublingVariant::D => "d",
        };
        f.write_str(s)
    }
}

impl FromStr for DoublingVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(DoublingVariant::A),
            "b" | "B" => Ok(DoublingVariant::B),
            "c" | "C" => Ok(DoublingVariant::C),
            "d" | "D" => Ok(DoublingVariant::D),
            _ => Err(Error::InvalidArgument(format!("unknown doubling variant {s:?}"))),
        }
    }
}

pub fn double(cf: &CfExpansion, y: &Quotient, variant: DoublingVariant) -> Result<CfExpansion> {
    if cf.head() != &Quotient::Int(Poly::one()) {
        return Err(Error::Precondition("doubling requires head 1".into()));
    }
    if y.is_zero() {
        return Err(Error::InvalidArgument("Y must be nonzero".into()));
    }
    let w = cf.word();
    let mut out = cf.clone();
    out.push(y.clone());
    let one = Quotient::Int(Poly::one());
    match variant {
        DoublingVariant::A => w.iter().for_each(|q| out.push(-q)),
        DoublingVariant::B => {
            w.iter().rev().for_each(|q| out.push(-q));
            out.push(-&one);
        }
        DoublingVariant::C => {
            w.iter().rev().for_each(|q| out.push(q.clone()));
            out.push(one);
        }
        DoublingVariant::D => w.iter().for_each(|q| out.push(q.clone())),
    }
    Ok(out)
}

fn c(v: i64) -> Poly {
    Poly::constant(v)
}

/// (A/B)(1 + (−1)ⁿ/(Y·A·B)), the value of [`fold`] in closed form.
pub fn fold_value(m: &ConvergentMatrix, y: &Poly) -> Result<RatFunc> {
    let s = Poly::constant(m.sign());
    let yab = &(y * &m.a) * &m.b;
    normalize(&m.a * &(&yab + &s), &m.b * &yab)
}

/// Closed form of [`double`] for each variant, in terms of the matrix of
/// [1; w].
pub fn double_value(m: &ConvergentMatrix, y: &Poly, variant: DoublingVariant) -> Result<RatFunc> {
    let s = Poly::constant(m.sign());
    let (a, b) = (&m.a, &m.b);
    match variant {
        DoublingVariant::A | DoublingVariant::D => {
            // D = A(B(Y ± 1) ∓ A + B')
            let (shift, a_sign) = if variant == DoublingVariant::A {
                (c(1), c(-1))
            } else {
                (c(-1), c(1))
            };
            let inner = &(&(b * &(y + &shift)) + &(&a_sign * a)) + &m.b_prev;
            let d = a * &inner;
            normalize(a * &(&d + &s), b * &d)
        }
        DoublingVariant::B => {
            // E = (−1)ⁿ·Y·A·B
            let e = &(&s * y) * &(a * b);
            normalize(a * &e, b * &(&e - &c(1)))
        }
        DoublingVariant::C => {
            // E = (−1)ⁿ·B·(Y·A + 2A')
            let e = &(&s * b) * &(&(y * a) + &m.a_prev.scale(&BigInt::from(2)));
            normalize(a * &e, b * &(&e - &c(1)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::product_truncate;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn cf(head: Poly, word: &[Poly]) -> CfExpansion {
        CfExpansion::from_polys(head, word.to_vec())
    }

    #[test]
    fn euclid_examples() {
        let x = Poly::x();
        let e = euclid_expand(&RatFunc::new(p(&[1, 1]), x.clone()).unwrap()).unwrap();
        assert_eq!(e.cf, cf(Poly::one(), std::slice::from_ref(&x)));
        assert_eq!(e.first_non_integral, None);

        let e = euclid_expand(&RatFunc::new(p(&[-1, 1, 1]), p(&[-1, 0, 1])).unwrap()).unwrap();
        assert_eq!(e.cf, cf(Poly::one(), &[x.clone(), -&x]));

        let r = product_truncate(&p(&[0, 0, 0, 1]), 1).unwrap();
        let e = euclid_expand(&r).unwrap();
        assert_eq!(e.first_non_integral, Some(4));
        assert_eq!(
            e.cf.word()[2],
            Quotient::Rat(RatPoly::from_fracs(&[(-1, 4), (-1, 2)]))
        );
        assert_eq!(value_of(&e.cf).unwrap(), r);
    }

    #[test]
    fn convergent_examples() {
        let ms = convergents(&cf(Poly::one(), &[Poly::x()])).unwrap();
        assert_eq!((&ms[1].a, &ms[1].b), (&p(&[1, 1]), &Poly::x()));
        assert_eq!(ms[1].determinant(), Poly::one());

        let ms = convergents(&CfExpansion::from_i64(1, &[2, 3])).unwrap();
        let m = &ms[2];
        assert_eq!((&m.a, &m.b, &m.a_prev, &m.b_prev), (&c(10), &c(7), &c(3), &c(2)));
        assert_eq!(m.determinant(), c(-1));
        for m in &ms {
            assert_eq!(m.determinant(), m.expected_determinant());
        }
    }

    #[test]
    fn value_examples() {
        let x = Poly::x();
        assert_eq!(
            value_of(&cf(Poly::one(), &[x.clone(), -&x])).unwrap(),
            RatFunc::new(p(&[-1, 1, 1]), p(&[-1, 0, 1])).unwrap()
        );
        assert_eq!(
            value_of(&CfExpansion::from_i64(1, &[2, 1, -2])).unwrap(),
            RatFunc::new(c(5), c(4)).unwrap()
        );
        assert_eq!(
            value_of(&CfExpansion::from_i64(1, &[0])),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn fold_examples() {
        let base = CfExpansion::from_i64(1, &[2]);
        let folded = fold(&base, &Quotient::Int(c(1))).unwrap();
        assert_eq!(folded, CfExpansion::from_i64(1, &[2, 1, -2]));
        assert_eq!(value_of(&folded).unwrap(), RatFunc::new(c(5), c(4)).unwrap());

        let x = Poly::x();
        let base = cf(Poly::one(), std::slice::from_ref(&x));
        let folded = fold(&base, &Quotient::Int(-&x)).unwrap();
        assert_eq!(folded, cf(Poly::one(), &[x.clone(), -&x, -&x]));
        let m = final_convergent(&base).unwrap();
        assert_eq!(value_of(&folded).unwrap(), fold_value(&m, &-&x).unwrap());
        assert!(fold(&base, &Quotient::Int(Poly::zero())).is_err());
    }

    #[test]
    fn doubling_examples() {
        let x = Poly::x();
        let base = cf(Poly::one(), std::slice::from_ref(&x));
        let xx1 = &x * &p(&[1, 1]);
        for g in [p(&[1]), p(&[0, 1]), p(&[2, 1]), p(&[-3, 0, 2])] {
            let y = Quotient::Int(-&g);
            let b = double(&base, &y, DoublingVariant::B).unwrap();
            assert_eq!(b, cf(Poly::one(), &[x.clone(), -&g, -&x, c(-1)]));
            let f = &(&xx1 * &g) - &c(1);
            let want = product_truncate(&f, 1).unwrap();
            // f₁ = f for the iterate; Π₁ = (x+1)/x·(1+1/f)
            assert_eq!(value_of(&b).unwrap(), want);

            let cc = double(&base, &y, DoublingVariant::C).unwrap();
            assert_eq!(cc, cf(Poly::one(), &[x.clone(), -&g, x.clone(), c(1)]));
            let f = &(&(&xx1 * &g) - &x.scale(&BigInt::from(2))) - &c(1);
            assert_eq!(value_of(&cc).unwrap(), product_truncate(&f, 1).unwrap());
        }
        let bad = CfExpansion::from_i64(2, &[1]);
        assert!(matches!(
            double(&bad, &Quotient::Int(c(1)), DoublingVariant::A),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn merge_units_examples() {
        let x = Poly::x();
        // [1; x, 1, x] = [1; x+1, −x−1]
        let m = cf(Poly::one(), &[x.clone(), c(1), x.clone()]).merge_units().unwrap();
        assert_eq!(m, cf(Poly::one(), &[p(&[1, 1]), p(&[-1, -1])]));
        // [1; x, −x, −1] = [1; x, −x−1]
        let m = cf(Poly::one(), &[x.clone(), -&x, c(-1)]).merge_units().unwrap();
        assert_eq!(m, cf(Poly::one(), &[x.clone(), p(&[-1, -1])]));
        // [1; x, 0, x] = [1; 2x]
        let m = cf(Poly::one(), &[x.clone(), c(0), x.clone()]).merge_units().unwrap();
        assert_eq!(m, cf(Poly::one(), &[x.scale(&BigInt::from(2))]));
    }

    fn small_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| Poly::from_i64(&c))
    }

    fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
        small_poly(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
    }

    fn word() -> impl Strategy<Value = Vec<Poly>> {
        proptest::collection::vec(nonzero_poly(2, 5), 1..=4)
    }

    fn check_variant(w: &[Poly], y: &Poly, v: DoublingVariant) -> std::result::Result<(), TestCaseError> {
        let base = cf(Poly::one(), w);
        let m = final_convergent(&base).unwrap();
        let built = double(&base, &Quotient::Int(y.clone()), v).unwrap();
        let lhs = value_of(&built);
        let rhs = double_value(&m, y, v);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => prop_assert_eq!(l, r),
            // Degenerate random words can vanish a denominator on both sides.
            (Err(_), _) | (_, Err(_)) => {}
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn euclid_round_trip(num in small_poly(12, 20), den in nonzero_poly(12, 20)) {
            let r = RatFunc::new(num, den).unwrap();
            let e = euclid_expand(&r).unwrap();
            prop_assert_eq!(value_of(&e.cf).unwrap(), r);
            if e.first_non_integral.is_none() {
                for m in convergents(&e.cf).unwrap() {
                    prop_assert_eq!(m.determinant(), m.expected_determinant());
                }
            }
        }

        #[test]
        fn fold_closed_form(w in word(), y in nonzero_poly(2, 5), head in -3i64..=3) {
            let base = cf(c(head), &w);
            let m = final_convergent(&base).unwrap();
            prop_assume!(!m.b.is_zero() && !m.a.is_zero());
            let built = fold(&base, &Quotient::Int(y.clone())).unwrap();
            if let (Ok(l), Ok(r)) = (value_of(&built), fold_value(&m, &y)) {
                prop_assert_eq!(l, r);
            }
        }

        #[test]
        fn doubling_closed_forms_symbolic_y(w in word()) {
            // Y = x keeps Y symbolic relative to the constant-free word.
            let y = Poly::x();
            let m = final_convergent(&cf(Poly::one(), &w)).unwrap();
            prop_assume!(!m.b.is_zero() && !m.a.is_zero());
            for v in [DoublingVariant::A, DoublingVariant::B, DoublingVariant::C, DoublingVariant::D] {
                check_variant(&w, &y, v)?;
            }
        }

        #[test]
        fn doubling_closed_forms(w in word(), y in nonzero_poly(3, 5)) {
            let m = final_convergent(&cf(Poly::one(), &w)).unwrap();
            prop_assume!(!m.b.is_zero() && !m.a.is_zero());
            for v in [DoublingVariant::A, DoublingVariant::B, DoublingVariant::C, DoublingVariant::D] {
                check_variant(&w, &y, v)?;
            }
        }

        #[test]
        fn merge_units_preserves_value(w in proptest::collection::vec(small_poly(2, 2), 1..=6)) {
            let e = cf(Poly::one(), &w);
            let Ok(v) = value_of(&e) else { return Ok(()) };
            if let Ok(m) = e.merge_units() {
                if let Ok(mv) = value_of(&m) {
                    prop_assert_eq!(mv, v.clone());
                }
                prop_assert!(m.word().iter().all(|q| q.degree().unwrap_or(0) >= 1));
            }
        }
    }
}

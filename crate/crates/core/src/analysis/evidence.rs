use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::decimal;
use crate::error::{Error, Result};
use crate::families::{build_expansion, classify, FamilyClass, FamilyKind};
use crate::polycore::guard::max_coeff_words;
use crate::polycore::Poly;
use crate::specialize::{eval_cf, orbit, product_of_orbit, regularize};

/// Records with n ≤ WARM_UP are reported but ignored by the verdict.
pub const WARM_UP: usize = 1;

/// Finite-depth measurement of −log|α − pₙ/qₙ| / log qₙ. The bracket
/// `[exponent_lo, exponent_hi]` comes from the rigorous bounds on α.
/// This is numeric evidence only and proves nothing.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvidenceRecord {
    pub n: usize,
    pub q_digits: usize,
    #[serde(skip)]
    pub gap: BigRational,
    #[serde(skip)]
    pub gap_lo: BigRational,
    #[serde(skip)]
    pub gap_hi: BigRational,
    pub exponent: f64,
    pub exponent_lo: f64,
    pub exponent_hi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evidence {
    pub records: Vec<EvidenceRecord>,
    pub epsilon: BigRational,
    pub verdict: bool,
    pub class: FamilyClass,
}

impl Evidence {
    pub fn threshold(&self) -> f64 {
        threshold(&self.epsilon)
    }
}

fn threshold(epsilon: &BigRational) -> f64 {
    2.0 + epsilon.to_f64().unwrap_or(f64::INFINITY)
}

fn main_class(f: &Poly) -> Result<FamilyClass> {
    classify(f)?
        .into_iter()
        .find(|c| FamilyKind::MAIN.contains(&c.kind))
        .ok_or_else(|| Error::Precondition(format!("{f} is not in one of the classes I-VII")))
}

/// Evidence for α = ∏ⱼ(1 + 1/fⱼ(M)) from the convergents pₙ/qₙ = Πₙ of the
/// specialized, regularized expansions Sₙ for n = 1..=depth.
///
/// α is replaced by the proxy Π_{depth+2}; the missing tail lies strictly
/// between 1 and 1 + 2/f_{depth+3}(M), which is checked to hold by requiring
/// fⱼ(M) ≥ 2 and fⱼ₊₁(M) ≥ fⱼ(M)²/2 along the orbit.
pub fn approx_exponent(f: &Poly, m: &BigInt, depth: usize, epsilon: &BigRational) -> Result<Evidence> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if f.degree().unwrap_or(0) < 3 {
        return Err(Error::Precondition("evidence needs deg f >= 3".into()));
    }
    if !f.leading_coeff().is_some_and(Signed::is_positive) {
        return Err(Error::Precondition(
            "evidence needs a positive leading coefficient; use the reflected partner".into(),
        ));
    }
    let class = main_class(f)?;
    if depth == 0 {
        return Ok(Evidence {
            records: Vec::new(),
            epsilon: epsilon.clone(),
            verdict: false,
            class,
        });
    }

    let orbit = bounded_orbit(f, m, depth + 3)?;
    let two = BigInt::from(2);
    for (j, w) in orbit.windows(2).enumerate() {
        if w[0] < two || &w[1] * 2 < &w[0] * &w[0] {
            return Err(Error::Precondition(format!(
                "orbit is not growing fast enough at j = {j}: f_j(M) = {}",
                w[0]
            )));
        }
    }
    let alpha_lo = product_of_orbit(&orbit[..=depth + 2]);
    let tail_hi = BigRational::one() + BigRational::new(two, orbit[depth + 3].clone());
    let alpha_hi = &alpha_lo * tail_hi;

    let threshold = threshold(epsilon);
    let mut records = Vec::with_capacity(depth);
    for n in 1..=depth {
        let cf = build_expansion(f, &class, n)?;
        let reg = regularize(&eval_cf(&cf, m)?)?;
        let (p, q) = reg.convergents().pop().expect("nonempty");
        let conv = BigRational::new(p, q.clone());
        if conv != product_of_orbit(&orbit[..=n]) {
            return Err(Error::Internal(format!(
                "specialized expansion S_{n} does not evaluate to the truncated product"
            )));
        }
        let gap_lo = &alpha_lo - &conv;
        let gap_hi = &alpha_hi - &conv;
        let ln_q = decimal::ln_bigint(&q);
        let exp_of = |g: &BigRational| -decimal::ln_rational(g) / ln_q;
        let exponent = exp_of(&gap_lo);
        // the bracket can be narrower than f64 resolution
        records.push(EvidenceRecord {
            n,
            q_digits: decimal::digit_count(&q),
            exponent,
            exponent_lo: exp_of(&gap_hi).min(exponent),
            exponent_hi: exponent,
            gap: gap_lo.clone(),
            gap_lo,
            gap_hi,
        });
    }
    let verdict = records
        .iter()
        .filter(|r| r.n > WARM_UP)
        .all(|r| r.exponent_lo >= threshold)
        && records.len() > WARM_UP;
    Ok(Evidence {
        records,
        epsilon: epsilon.clone(),
        verdict,
        class,
    })
}

fn bounded_orbit(f: &Poly, m: &BigInt, n: usize) -> Result<Vec<BigInt>> {
    // log₂|fⱼ(M)| grows like deg^j; check the prediction before evaluating
    let limit = max_coeff_words();
    let deg = f.degree().unwrap_or(1) as u128;
    let base = (m.bits() as u128 + 1) + f.l1_norm().bits() as u128;
    let mut bits = base;
    for _ in 0..n {
        bits = bits.saturating_mul(deg).saturating_add(base);
    }
    let words = bits / 64 + 1;
    if words > limit as u128 {
        return Err(Error::ResourceLimit {
            predicted: words,
            limit,
        });
    }
    orbit(f, m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn class_one_at_two() {
        let f = Poly::from_i64(&[0, 0, 1, 1]);
        let e = approx_exponent(&f, &BigInt::from(2), 4, &half()).unwrap();
        assert!(e.verdict);
        assert_eq!(e.records.len(), 4);
        for r in &e.records {
            assert!(r.gap_lo <= r.gap && r.gap <= r.gap_hi);
            assert!(r.exponent_lo <= r.exponent && r.exponent <= r.exponent_hi);
        }
        for w in e.records.windows(2) {
            assert!(w[1].gap < w[0].gap);
        }
    }

    #[test]
    fn widening_depth_stays_in_bracket() {
        for (f, m) in [(Poly::from_i64(&[-1, -1, 1, 1]), 3), (Poly::monomial(1, 4), 2)] {
            let shallow = approx_exponent(&f, &BigInt::from(m), 3, &half()).unwrap();
            let deep = approx_exponent(&f, &BigInt::from(m), 4, &half()).unwrap();
            for (a, b) in shallow.records.iter().zip(&deep.records) {
                assert!(a.gap_lo <= b.gap && b.gap <= a.gap_hi, "{f} n={}", a.n);
                let width = a.exponent_hi - a.exponent_lo;
                assert!((a.exponent - b.exponent).abs() <= width + 1e-9, "{f} n={}", a.n);
            }
        }
    }

    #[test]
    fn zero_depth_is_vacuously_false() {
        let f = Poly::from_i64(&[0, 0, 1, 1]);
        let e = approx_exponent(&f, &BigInt::from(2), 0, &half()).unwrap();
        assert!(e.records.is_empty());
        assert!(!e.verdict);
    }

    #[test]
    fn preconditions() {
        let f = Poly::from_i64(&[0, 0, 1, 1]);
        assert!(approx_exponent(&Poly::from_i64(&[0, 0, 1]), &BigInt::from(2), 2, &half()).is_err());
        assert!(approx_exponent(&Poly::from_i64(&[1, 0, 1, 1]), &BigInt::from(2), 2, &half()).is_err());
        assert!(matches!(
            approx_exponent(&f, &BigInt::from(1), 2, &half()),
            Err(Error::Precondition(_))
        ));
        assert!(approx_exponent(&f, &BigInt::from(2), 2, &BigRational::from_integer(0.into())).is_err());
    }
}

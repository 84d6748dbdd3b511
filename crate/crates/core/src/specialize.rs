//! Specialization of symbolic expansions at integer arguments and
//! regularization of the resulting integer sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cf::CfExpansion;
use crate::error::{Error, Result};
use crate::polycore::Poly;

/// Canonical regular continued fraction: terms after the first are ≥ 1 and
/// the last term is ≥ 2 when there is more than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularCF {
    terms: Vec<BigInt>,
}

/// Integer partial quotients with no sign or size restriction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntSeq {
    pub terms: Vec<BigInt>,
}

impl IntSeq {
    pub fn from_i64(terms: &[i64]) -> Self {
        IntSeq {
            terms: terms.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    /// Exact value by the convergent recurrence.
    pub fn value(&self) -> Result<BigRational> {
        let (p, q) = convergent(&self.terms).ok_or(Error::InvalidArgument("empty sequence".into()))?;
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(BigRational::new(p, q))
    }
}

/// Final (p, q) of a sequence of partial quotients, unreduced sign-wise.
fn convergent(terms: &[BigInt]) -> Option<(BigInt, BigInt)> {
    let (first, rest) = terms.split_first()?;
    let (mut p, mut p_prev) = (first.clone(), BigInt::one());
    let (mut q, mut q_prev) = (BigInt::one(), BigInt::zero());
    for a in rest {
        let np = a * &p + &p_prev;
        let nq = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, np);
        q_prev = std::mem::replace(&mut q, nq);
    }
    Some((p, q))
}

impl RegularCF {
    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All convergents pᵢ/qᵢ, in lowest terms with qᵢ > 0.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(self.terms.len());
        let (mut p, mut p_prev) = (BigInt::one(), BigInt::zero());
        let (mut q, mut q_prev) = (BigInt::zero(), BigInt::one());
        for a in &self.terms {
            let np = a * &p + &p_prev;
            let nq = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, np);
            q_prev = std::mem::replace(&mut q, nq);
            out.push((p.clone(), q.clone()));
        }
        out
    }

    pub fn value(&self) -> BigRational {
        let (p, q) = self.convergents().pop().expect("nonempty");
        BigRational::new(p, q)
    }

    fn check_invariants(&self) -> bool {
        let n = self.terms.len();
        n >= 1
            && self.terms[1..].iter().all(|t| t >= &BigInt::one())
            && (n == 1 || self.terms[n - 1] >= BigInt::from(2))
    }
}

impl fmt::Display for RegularCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Canonical regular continued fraction of p/q by the floor-based integer
/// Euclidean algorithm.
pub fn rational_to_cf(p: &BigInt, q: &BigInt) -> Result<RegularCF> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if q.is_negative() {
        return Err(Error::InvalidArgument("denominator must be positive".into()));
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut terms = Vec::new();
    loop {
        let (t, r) = a.div_mod_floor(&b);
        terms.push(t);
        if r.is_zero() {
            break;
        }
        a = std::mem::replace(&mut b, r);
    }
    Ok(RegularCF { terms })
}

pub fn rational_to_regular(r: &BigRational) -> RegularCF {
    rational_to_cf(r.numer(), r.denom()).expect("reduced rationals have a positive denominator")
}

/// The orbit f₀(M), …, fₙ(M); fails at the first value in {0, −1}.
pub fn orbit(f: &Poly, m: &BigInt, n: usize) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut v = m.clone();
    for j in 0..=n {
        if v.is_zero() || v == -BigInt::one() {
            return Err(Error::OrbitViolation {
                index: j,
                value: v.to_string(),
            });
        }
        let next = if j < n { Some(f.eval(&v)) } else { None };
        out.push(v);
        match next {
            Some(x) => v = x,
            None => break,
        }
    }
    Ok(out)
}

/// First j ≤ n with fⱼ(M) ∈ {0, −1}.
pub fn orbit_check(f: &Poly, m: &BigInt, n: usize) -> Option<usize> {
    match orbit(f, m, n) {
        Err(Error::OrbitViolation { index, .. }) => Some(index),
        _ => None,
    }
}

/// Substitute x = M into every partial quotient.
pub fn eval_cf(cf: &CfExpansion, m: &BigInt) -> Result<IntSeq> {
    let (head, word) = cf.int_parts()?;
    Ok(IntSeq {
        terms: std::iter::once(head)
            .chain(word)
            .map(|q| q.eval(m))
            .collect(),
    })
}

/// ∏ⱼ₌₀ⁿ (1 + 1/fⱼ(M)) exactly.
pub fn product_value(f: &Poly, m: &BigInt, n: usize) -> Result<BigRational> {
    let orbit = orbit(f, m, n)?;
    Ok(product_of_orbit(&orbit))
}

pub(crate) fn product_of_orbit(orbit: &[BigInt]) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for v in orbit {
        num *= v + 1;
        den *= v;
    }
    BigRational::new(num, den)
}

/// Rewrite a sequence into canonical regular form with
///
/// ```text
/// [.., a, 0, c, ..]        = [.., a+c, ..]
/// [.., y, a, 0]            = [.., y]
/// [.., a, −b, c, d, ..]    = [.., a−1, 1, b−1, −c, −d, ..]
/// [.., a, 1]               = [.., a+1]
/// ```
///
/// scanning leftmost first. The result is checked against the integer
/// Euclidean algorithm applied to the exact value.
pub fn regularize(s: &IntSeq) -> Result<RegularCF> {
    if s.terms.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    let value = s.value()?;
    let mut t = s.terms.clone();
    let budget = 10 * t.len().max(4).pow(2);
    let mut steps = 0usize;
    let mut i = 1;
    while i < t.len() {
        if t[i].is_positive() {
            i += 1;
            continue;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::Internal("regularization step budget exhausted".into()));
        }
        if t[i].is_zero() {
            if i + 1 < t.len() {
                let c = t.remove(i + 1);
                t.remove(i);
                t[i - 1] += c;
            } else if i >= 2 {
                t.truncate(i - 1);
            } else {
                return Err(Error::ZeroDenominator);
            }
        } else {
            let b = -t[i].clone();
            t[i - 1] -= 1;
            t[i] = BigInt::one();
            for x in t.iter_mut().skip(i + 1) {
                *x = -std::mem::take(x);
            }
            t.insert(i + 1, b - 1);
        }
        i = i.saturating_sub(2).max(1);
    }
    if t.len() > 1 && t.last().is_some_and(One::is_one) {
        t.pop();
        *t.last_mut().unwrap() += 1;
    }
    let out = RegularCF { terms: t };
    let oracle = rational_to_regular(&value);
    if out != oracle || !out.check_invariants() {
        return Err(Error::Internal(format!(
            "regularization {out} disagrees with the integer Euclidean algorithm {oracle}"
        )));
    }
    Ok(out)
}

/// Symbolic counterpart of [`regularize`]'s zero and negative rules, with
/// "negative" meaning a negative leading coefficient. Removes the signs that
/// the constructions leave behind, e.g. turning [1; x, −(x²−x+1), −x(x+1), …]
/// into [1; x−1, 1, x(x−1), x(x+1), …].
pub fn sign_normalize(cf: &CfExpansion) -> Result<CfExpansion> {
    let (head, word) = cf.int_parts()?;
    let mut t: Vec<Poly> = std::iter::once(head.clone())
        .chain(word.into_iter().cloned())
        .collect();
    let budget = 10 * t.len().max(4).pow(2);
    let mut steps = 0usize;
    let mut i = 1;
    let one = Poly::one();
    while i < t.len() {
        let lead_negative = t[i].leading_coeff().is_some_and(Signed::is_negative);
        if !t[i].is_zero() && !lead_negative {
            i += 1;
            continue;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::Internal("sign normalization step budget exhausted".into()));
        }
        if t[i].is_zero() {
            if i + 1 < t.len() {
                let c = t.remove(i + 1);
                t.remove(i);
                t[i - 1] = &t[i - 1] + &c;
            } else if i >= 2 {
                t.truncate(i - 1);
            } else {
                return Err(Error::ZeroDenominator);
            }
        } else {
            let b = -std::mem::take(&mut t[i]);
            t[i - 1] = &t[i - 1] - &one;
            t[i] = one.clone();
            for x in t.iter_mut().skip(i + 1) {
                *x = -std::mem::take(x);
            }
            t.insert(i + 1, &b - &one);
        }
        i = i.saturating_sub(2).max(1);
    }
    let mut it = t.into_iter();
    let head = it.next().expect("head");
    Ok(CfExpansion::from_polys(head, it.collect()))
}

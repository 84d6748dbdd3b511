use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polycore::{normalize, Poly, RatFunc, RatPoly};

/// A partial quotient. Integral quotients are always stored as `Int`;
/// `Rat` only ever holds a polynomial with a non-integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Quotient {
    Int(Poly),
    Rat(RatPoly),
}

impl Quotient {
    pub fn is_integral(&self) -> bool {
        matches!(self, Quotient::Int(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Quotient::Int(p) => p.is_zero(),
            Quotient::Rat(p) => p.is_zero(),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Quotient::Int(p) => Some(p),
            Quotient::Rat(_) => None,
        }
    }

    pub fn to_ratpoly(&self) -> RatPoly {
        match self {
            Quotient::Int(p) => RatPoly::from(p),
            Quotient::Rat(p) => p.clone(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Quotient::Int(p) => p.degree(),
            Quotient::Rat(p) => p.degree(),
        }
    }
}

impl From<Poly> for Quotient {
    fn from(p: Poly) -> Self {
        Quotient::Int(p)
    }
}

impl From<RatPoly> for Quotient {
    fn from(p: RatPoly) -> Self {
        match p.to_poly() {
            Some(q) => Quotient::Int(q),
            None => Quotient::Rat(p),
        }
    }
}

impl std::ops::Neg for &Quotient {
    type Output = Quotient;
    fn neg(self) -> Quotient {
        match self {
            Quotient::Int(p) => Quotient::Int(-p),
            Quotient::Rat(p) => Quotient::Rat(-p),
        }
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quotient::Int(p) => write!(f, "{p}"),
            Quotient::Rat(p) => write!(f, "{p}"),
        }
    }
}

/// A finite continued fraction [a₀; a₁, …, aₘ] over ℚ(x).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    head: Quotient,
    word: Vec<Quotient>,
}

impl CfExpansion {
    /// Every quotient after the head must be nonzero.
    pub fn new(head: Quotient, word: Vec<Quotient>) -> Result<Self> {
        if word.iter().any(Quotient::is_zero) {
            return Err(Error::InvalidArgument(
                "partial quotients after the head must be nonzero".into(),
            ));
        }
        Ok(CfExpansion { head, word })
    }

    /// Integral expansion; unlike [`CfExpansion::new`] zero quotients are
    /// allowed, since specialized or hand-built words may contain them.
    pub fn from_polys(head: Poly, word: Vec<Poly>) -> Self {
        CfExpansion {
            head: Quotient::Int(head),
            word: word.into_iter().map(Quotient::Int).collect(),
        }
    }

    pub fn from_i64(head: i64, word: &[i64]) -> Self {
        CfExpansion::from_polys(
            Poly::constant(head),
            word.iter().map(|&c| Poly::constant(c)).collect(),
        )
    }

    pub fn head(&self) -> &Quotient {
        &self.head
    }

    pub fn word(&self) -> &[Quotient] {
        &self.word
    }

    /// Length of the word, i.e. the index of the final convergent.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// All quotients, head first.
    pub fn quotients(&self) -> impl Iterator<Item = &Quotient> {
        std::iter::once(&self.head).chain(self.word.iter())
    }

    pub fn is_specializable(&self) -> bool {
        self.quotients().all(Quotient::is_integral)
    }

    /// Head and word as integer polynomials, if specializable.
    pub fn int_parts(&self) -> Result<(&Poly, Vec<&Poly>)> {
        let head = self
            .head
            .as_poly()
            .ok_or(Error::NonSpecializable { index: 1 })?;
        let word = self
            .word
            .iter()
            .enumerate()
            .map(|(i, q)| q.as_poly().ok_or(Error::NonSpecializable { index: i + 2 }))
            .collect::<Result<Vec<_>>>()?;
        Ok((head, word))
    }

    pub(crate) fn push(&mut self, q: impl Into<Quotient>) {
        self.word.push(q.into());
    }

    /// True if `other` starts with every quotient of `self`.
    pub fn is_prefix_of(&self, other: &CfExpansion) -> bool {
        self.head == other.head
            && self.word.len() <= other.word.len()
            && self.word.iter().zip(&other.word).all(|(a, b)| a == b)
    }

    /// Apply a map to every quotient (e.g. a substitution x ↦ −x−1).
    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Result<CfExpansion> {
        let (head, word) = self.int_parts()?;
        Ok(CfExpansion::from_polys(
            f(head),
            word.into_iter().map(f).collect(),
        ))
    }

    /// Rewrite an integral expansion so that no quotient after the head is a
    /// constant, using
    ///
    /// ```text
    /// [.., a, 0, b, ..]        = [.., a+b, ..]
    /// [.., a, b, 0]            = [.., a]
    /// [.., a, ε, b, c, d, ..]  = [.., a+ε, −b−ε, −c, −d, ..]   (ε = ±1)
    /// [.., a, ε]               = [.., a+ε]
    /// ```
    ///
    /// Over ℚ(x) the expansion whose quotients after the head all have positive
    /// degree is unique, so the result is directly comparable with the output
    /// of the Euclidean algorithm.
    pub fn merge_units(&self) -> Result<CfExpansion> {
        let (head, word) = self.int_parts()?;
        let mut seq: Vec<Poly> = std::iter::once(head.clone())
            .chain(word.into_iter().cloned())
            .collect();
        let mut i = 1;
        while i < seq.len() {
            if !seq[i].is_constant() {
                i += 1;
                continue;
            }
            let c = seq[i].coeff(0);
            let last = i + 1 == seq.len();
            if c.is_zero() {
                if last {
                    if i == 1 {
                        return Err(Error::ZeroDenominator);
                    }
                    seq.truncate(i - 1);
                } else {
                    let next = seq.remove(i + 1);
                    seq.remove(i);
                    seq[i - 1] = &seq[i - 1] + &next;
                }
            } else if c.abs().is_one() {
                let eps = Poly::constant(c.clone());
                seq[i - 1] = &seq[i - 1] + &eps;
                if !last {
                    seq[i + 1] = -(&seq[i + 1] + &eps);
                    for q in seq.iter_mut().skip(i + 2) {
                        *q = -std::mem::take(q);
                    }
                }
                seq.remove(i);
            } else {
                return Err(Error::InvalidArgument(format!(
                    "constant quotient {c} cannot be merged in ℤ[x]"
                )));
            }
            i = i.saturating_sub(1).max(1);
        }
        let mut it = seq.into_iter();
        let head = it.next().expect("head");
        Ok(CfExpansion::from_polys(head, it.collect()))
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.head)?;
        for (i, q) in self.word.iter().enumerate() {
            let sep = if i == 0 { "; " } else { ", " };
            write!(f, "{sep}{q}")?;
        }
        write!(f, "]")
    }
}

/// The matrix [[A, A'], [B, B']] of the n-th convergent A/B with the
/// previous convergent A'/B'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentMatrix {
    pub a: Poly,
    pub b: Poly,
    pub a_prev: Poly,
    pub b_prev: Poly,
    pub n: usize,
}

impl ConvergentMatrix {
    /// Convergent of the head alone; seeded by A₋₁ = 1, B₋₁ = 0.
    pub fn seed(head: &Poly) -> Self {
        ConvergentMatrix {
            a: head.clone(),
            b: Poly::one(),
            a_prev: Poly::one(),
            b_prev: Poly::zero(),
            n: 0,
        }
    }

    /// Append one partial quotient: Aᵢ = aᵢAᵢ₋₁ + Aᵢ₋₂ and likewise for B.
    pub fn push(&mut self, q: &Poly) {
        let a = &(q * &self.a) + &self.a_prev;
        let b = &(q * &self.b) + &self.b_prev;
        self.a_prev = std::mem::replace(&mut self.a, a);
        self.b_prev = std::mem::replace(&mut self.b, b);
        self.n += 1;
    }

    /// A·B' − A'·B
    pub fn determinant(&self) -> Poly {
        &(&self.a * &self.b_prev) - &(&self.a_prev * &self.b)
    }

    /// (−1)^(n−1)
    pub fn expected_determinant(&self) -> Poly {
        Poly::constant(if self.n % 2 == 1 { 1 } else { -1 })
    }

    pub fn sign(&self) -> BigInt {
        if self.n.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }

    pub fn value(&self) -> Result<RatFunc> {
        RatFunc::from_coprime(self.a.clone(), self.b.clone())
    }
}

/// Convergent matrices for every prefix of an integral expansion.
pub fn convergents(cf: &CfExpansion) -> Result<Vec<ConvergentMatrix>> {
    let (head, word) = cf.int_parts()?;
    let mut m = ConvergentMatrix::seed(head);
    let mut out = Vec::with_capacity(word.len() + 1);
    out.push(m.clone());
    for q in word {
        m.push(q);
        out.push(m.clone());
    }
    Ok(out)
}

/// Final convergent matrix of an integral expansion.
pub fn final_convergent(cf: &CfExpansion) -> Result<ConvergentMatrix> {
    let (head, word) = cf.int_parts()?;
    let mut m = ConvergentMatrix::seed(head);
    for q in word {
        m.push(q);
    }
    Ok(m)
}

/// The rational function a continued fraction represents.
pub fn value_of(cf: &CfExpansion) -> Result<RatFunc> {
    if cf.is_specializable() {
        let m = final_convergent(cf)?;
        if m.b.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // A and B are coprime because A·B' − A'·B = ±1.
        return m.value();
    }
    let (mut a, mut a_prev) = (cf.head.to_ratpoly(), RatPoly::from(Poly::one()));
    let (mut b, mut b_prev) = (RatPoly::from(Poly::one()), RatPoly::zero());
    for q in &cf.word {
        let q = q.to_ratpoly();
        let na = &(&q * &a) + &a_prev;
        let nb = &(&q * &b) + &b_prev;
        a_prev = std::mem::replace(&mut a, na);
        b_prev = std::mem::replace(&mut b, nb);
    }
    if b.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let (ca, pa) = a.clear_denominators();
    let (cb, pb) = b.clear_denominators();
    // a/b = (pa/ca)/(pb/cb) = (pa·cb)/(pb·ca)
    normalize(pa.scale(&cb), pb.scale(&ca))
}

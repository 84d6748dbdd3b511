//! Classification of f into the known specializable families, the
//! family-specific constructions of Sₙ, and the auxiliary identities used by
//! the degree-k family.

mod build;

pub use build::{build_expansion, build_expansion_unchecked};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    DegreeTwo,
    Prop1,
    Unknown,
}

impl FamilyKind {
    pub const MAIN: [FamilyKind; 7] = [
        FamilyKind::I,
        FamilyKind::II,
        FamilyKind::III,
        FamilyKind::IV,
        FamilyKind::V,
        FamilyKind::VI,
        FamilyKind::VII,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::I => "I",
            FamilyKind::II => "II",
            FamilyKind::III => "III",
            FamilyKind::IV => "IV",
            FamilyKind::V => "V",
            FamilyKind::VI => "VI",
            FamilyKind::VII => "VII",
            FamilyKind::DegreeTwo => "DegreeTwo",
            FamilyKind::Prop1 => "Prop1",
            FamilyKind::Unknown => "Unknown",
        }
    }

    /// Name of the extracted parameter: `G` for class II, `g` elsewhere.
    pub fn witness_name(self) -> Option<&'static str> {
        match self {
            FamilyKind::II => Some("G"),
            FamilyKind::DegreeTwo | FamilyKind::Unknown => None,
            _ => Some("g"),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = match s.to_ascii_lowercase().as_str() {
            "i" | "1" => FamilyKind::I,
            "ii" | "2" => FamilyKind::II,
            "iii" | "3" => FamilyKind::III,
            "iv" | "4" => FamilyKind::IV,
            "v" | "5" => FamilyKind::V,
            "vi" | "6" => FamilyKind::VI,
            "vii" | "7" => FamilyKind::VII,
            "degreetwo" | "degree-two" | "deg2" => FamilyKind::DegreeTwo,
            "prop1" => FamilyKind::Prop1,
            "unknown" => FamilyKind::Unknown,
            _ => return Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        };
        Ok(k)
    }
}

/// A classification verdict with its extracted parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyClass {
    pub kind: FamilyKind,
    /// g or G, see [`FamilyKind::witness_name`].
    pub witness: Option<Poly>,
    /// Only for [`FamilyKind::Prop1`].
    pub k: Option<u32>,
}

impl FamilyClass {
    pub fn unknown() -> Self {
        FamilyClass {
            kind: FamilyKind::Unknown,
            witness: None,
            k: None,
        }
    }

    fn with_witness(kind: FamilyKind, w: Poly) -> Self {
        FamilyClass {
            kind,
            witness: Some(w),
            k: None,
        }
    }

    /// Rebuild f from the witness through the family's defining form.
    pub fn reconstruct(&self) -> Option<Poly> {
        let w = self.witness.as_ref()?;
        let (p, q) = match self.kind {
            FamilyKind::Prop1 => prop1_form(self.k?),
            FamilyKind::DegreeTwo | FamilyKind::Unknown => return None,
            kind => main_form(kind),
        };
        Some(&(&p * w) + &q)
    }
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(k) = self.k {
            write!(f, "(k={k})")?;
        }
        if let (Some(w), Some(name)) = (&self.witness, self.kind.witness_name()) {
            write!(f, " {name} = {w}")?;
        }
        Ok(())
    }
}

fn p(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

/// (P, Q) with f = P·w + Q for each of the classes I-VII.
fn main_form(kind: FamilyKind) -> (Poly, Poly) {
    let x = Poly::x();
    let x1 = p(&[1, 1]);
    let xx1 = &x * &x1;
    match kind {
        // x²(x+1)g
        FamilyKind::I => (&x * &xx1, Poly::zero()),
        // x(x+1)G − x − 1
        FamilyKind::II => (xx1, p(&[-1, -1])),
        // x(x+1)²g − 1
        FamilyKind::III => (&xx1 * &x1, p(&[-1])),
        // x(x+1)((x−1)g + 2) − 2x − 1
        FamilyKind::IV => (&xx1 * &p(&[-1, 1]), p(&[-1, 0, 2])),
        // x(x+1)((x+2)g − 2) − 2x − 2
        FamilyKind::V => (&xx1 * &p(&[2, 1]), p(&[-2, -4, -2])),
        // x(x+1)(x(x−1)g + 1) − x
        FamilyKind::VI => (&xx1 * &p(&[0, -1, 1]), p(&[0, 0, 1])),
        // x(x+1)((x+2)(x+1)g − 1) − x − 2
        FamilyKind::VII => (&xx1 * &p(&[2, 3, 1]), p(&[-2, -2, -1])),
        _ => unreachable!("not one of the classes I-VII"),
    }
}

/// f = x^k(x+1)·g + 2x + x² + (−1)^k x^k
fn prop1_form(k: u32) -> (Poly, Poly) {
    let xk = Poly::monomial(1, k as usize);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let q = &p(&[0, 2, 1]) + &Poly::monomial(sign, k as usize);
    (&xk * &p(&[1, 1]), q)
}

fn extract(f: &Poly, form: &(Poly, Poly)) -> Option<Poly> {
    (f - &form.1).div_exact(&form.0).ok().flatten()
}

/// Witness for the given class among I-VII, if f has that form with
/// deg f ≥ 3.
pub fn main_witness(f: &Poly, kind: FamilyKind) -> Option<Poly> {
    if f.degree()? < 3 {
        return None;
    }
    extract(f, &main_form(kind)).filter(|w| !w.is_zero())
}

/// f of the given form among I-VII; the witness is multiplied by x until
/// deg f ≥ 3.
pub fn main_poly(kind: FamilyKind, witness: &Poly) -> Result<Poly> {
    if !FamilyKind::MAIN.contains(&kind) {
        return Err(Error::InvalidArgument(format!("{kind} is not one of the classes I-VII")));
    }
    if witness.is_zero() {
        return Err(Error::InvalidArgument("witness must be nonzero".into()));
    }
    let (a, b) = main_form(kind);
    let mut w = witness.clone();
    loop {
        let f = &(&a * &w) + &b;
        if f.degree() >= Some(3) {
            return Ok(f);
        }
        w = &w * &Poly::x();
    }
}

/// One polynomial per class I-VII and witness in {1, x, x+2}.
pub fn representatives() -> Vec<(FamilyKind, Poly)> {
    let witnesses = [p(&[1]), p(&[0, 1]), p(&[2, 1])];
    FamilyKind::MAIN
        .iter()
        .flat_map(|&k| {
            witnesses
                .iter()
                .map(move |w| (k, main_poly(k, w).expect("valid form")))
        })
        .collect()
}

/// The four degree-two polynomials with a specializable infinite product.
pub fn degree_two_set() -> [Poly; 4] {
    [p(&[-2, -2, -1]), p(&[-1, -2, -1]), p(&[0, 0, 1]), p(&[-1, 0, 1])]
}

/// Largest k ≥ 2 for which f = prop1_poly(k, g), with its g.
pub fn prop1_match(f: &Poly) -> Option<(u32, Poly)> {
    let d = f.degree()?;
    (2..=d.max(2) as u32).rev().find_map(|k| {
        let g = extract(f, &prop1_form(k))?;
        (k > 2 || !g.is_zero()).then_some((k, g))
    })
}

/// Every family f belongs to; `[Unknown]` when there is none.
pub fn classify(f: &Poly) -> Result<Vec<FamilyClass>> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let mut out: Vec<FamilyClass> = FamilyKind::MAIN
        .iter()
        .filter_map(|&kind| {
            main_witness(f, kind).map(|w| FamilyClass::with_witness(kind, w))
        })
        .collect();
    if degree_two_set().contains(f) {
        out.push(FamilyClass {
            kind: FamilyKind::DegreeTwo,
            witness: None,
            k: None,
        });
    }
    if let Some((k, g)) = prop1_match(f) {
        out.push(FamilyClass {
            kind: FamilyKind::Prop1,
            witness: Some(g),
            k: Some(k),
        });
    }
    if out.is_empty() {
        out.push(FamilyClass::unknown());
    }
    Ok(out)
}

/// Re-derive `class` for f, failing if f does not have that form.
pub fn verify_class(f: &Poly, class: &FamilyClass) -> Result<()> {
    let mismatch = |reason: &str| Error::ClassMismatch {
        class: class.kind.to_string(),
        reason: reason.into(),
    };
    match class.kind {
        FamilyKind::Unknown => Err(mismatch("no construction for Unknown")),
        FamilyKind::DegreeTwo => {
            if degree_two_set().contains(f) {
                Ok(())
            } else {
                Err(mismatch("not one of the four degree-two polynomials"))
            }
        }
        FamilyKind::Prop1 => {
            let k = class.k.ok_or_else(|| mismatch("missing k"))?;
            let g = extract(f, &prop1_form(k)).ok_or_else(|| mismatch("congruence fails"))?;
            if k < 2 || (k == 2 && g.is_zero()) {
                return Err(mismatch("needs k ≥ 2 and nonzero g for k = 2"));
            }
            check_witness(class, &g).map_err(|_| mismatch("witness does not match f"))
        }
        kind => {
            let w = main_witness(f, kind)
                .ok_or_else(|| mismatch("congruence fails or deg f < 3"))?;
            check_witness(class, &w).map_err(|_| mismatch("witness does not match f"))
        }
    }
}

fn check_witness(class: &FamilyClass, w: &Poly) -> std::result::Result<(), ()> {
    match &class.witness {
        Some(given) if given != w => Err(()),
        _ => Ok(()),
    }
}

/// −f(−x−1) − 1
pub fn reflect(f: &Poly) -> Poly {
    -f.reflect_argument() - Poly::one()
}

/// 2x + x² + x^k((−1)^k + (x+1)g)
pub fn prop1_poly(k: u32, g: &Poly) -> Result<Poly> {
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    if k == 2 && g.is_zero() {
        return Err(Error::InvalidArgument("g must be nonzero when k = 2".into()));
    }
    let (a, b) = prop1_form(k);
    Ok(&(&a * g) + &b)
}

/// Σⱼ (−1)^(j−1)·C(j, m−j)·2^(2j−m) over 2j ≥ m.
pub fn wz_sum(m: u32) -> BigInt {
    let mut total = BigInt::zero();
    for j in m.div_ceil(2)..=m {
        let c = num_integer::binomial(BigInt::from(j), BigInt::from(m - j));
        let term = c << (2 * j - m) as usize;
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// hₜ(k) = D(k)/k^(t+1) where
/// D(k) = (1+k)Σₘ(−1)^(m+1)(2k+k²)^m − Σₘ(−1)^(m+1)k^m, m = 0..t.
pub fn eq2_quotient(t: u32) -> Result<Poly> {
    let base = p(&[0, 2, 1]);
    let mut lhs = Poly::zero();
    let mut rhs = Poly::zero();
    let mut pow = Poly::one();
    for m in 0..=t {
        let sign = if m % 2 == 0 { -1 } else { 1 };
        lhs = &lhs + &pow.scale(&BigInt::from(sign));
        rhs = &rhs + &Poly::monomial(sign, m as usize);
        pow = &pow * &base;
    }
    let d = &(&lhs * &p(&[1, 1])) - &rhs;
    let shift = t as usize + 1;
    if d.coeffs().iter().take(shift).any(|c| !c.is_zero()) {
        return Err(Error::Internal(format!(
            "k^{shift} does not divide D(k) for t = {t}"
        )));
    }
    Ok(Poly::from_coeffs(d.coeffs().iter().skip(shift).cloned().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kinds(f: &Poly) -> Vec<FamilyKind> {
        classify(f).unwrap().into_iter().map(|c| c.kind).collect()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&p(&[0, 0, 1, 1])).unwrap();
        assert_eq!(c[0].kind, FamilyKind::I);
        assert_eq!(c[0].witness, Some(Poly::one()));

        let c = classify(&p(&[-1, -1, 1, 1])).unwrap();
        let ii = c.iter().find(|c| c.kind == FamilyKind::II).unwrap();
        assert_eq!(ii.witness, Some(Poly::x()));

        assert_eq!(kinds(&p(&[0, 0, 1])), vec![FamilyKind::DegreeTwo]);
        assert_eq!(kinds(&p(&[0, 0, 0, 1])), vec![FamilyKind::Unknown]);
        assert_eq!(classify(&p(&[7])), Err(Error::ConstantInput));
    }

    #[test]
    fn every_form_reconstructs() {
        for kind in FamilyKind::MAIN {
            for w in [p(&[1]), p(&[0, 1]), p(&[2, 1]), p(&[-3, 0, 1])] {
                let (a, b) = main_form(kind);
                let f = &(&a * &w) + &b;
                let found = classify(&f).unwrap();
                if f.degree() < Some(3) {
                    assert!(found.iter().all(|c| c.kind != kind), "{kind} {f}");
                    continue;
                }
                let c = found.iter().find(|c| c.kind == kind).unwrap_or_else(|| panic!("{kind} {w} {f} {found:?}"));
                assert_eq!(c.witness.as_ref(), Some(&w));
                assert_eq!(c.reconstruct(), Some(f.clone()));
                verify_class(&f, c).unwrap();
            }
        }
    }

    #[test]
    fn class_iii_uses_small_g() {
        // x(x+1)² − 1, G = x + 1, g = 1
        let c = classify(&p(&[-1, 1, 2, 1])).unwrap();
        let iii = c.iter().find(|c| c.kind == FamilyKind::III).unwrap();
        assert_eq!(iii.witness, Some(Poly::one()));
    }

    #[test]
    fn x4_is_class_six() {
        let c = classify(&Poly::monomial(1, 4)).unwrap();
        let vi = c.iter().find(|c| c.kind == FamilyKind::VI).unwrap();
        // G = x² − x + 1 = x(x−1)·1 + 1
        assert_eq!(vi.witness, Some(Poly::one()));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect(&p(&[0, 0, 1])), p(&[-2, -2, -1]));
        assert_eq!(reflect(&p(&[-1, 0, 1])), p(&[-1, -2, -1]));
        for f in [p(&[0, 0, 1]), p(&[-1, 0, 1])] {
            assert!(degree_two_set().contains(&reflect(&f)));
        }
    }

    #[test]
    fn reflection_maps_seven_to_six() {
        for g in [p(&[1]), p(&[0, 1]), p(&[2, 1])] {
            let (a, b) = main_form(FamilyKind::VII);
            let f = &(&a * &g) + &b;
            let h = reflect(&f);
            assert_eq!(main_witness(&h, FamilyKind::VI), Some(-g.reflect_argument()));
        }
    }

    #[test]
    fn prop1_examples() {
        assert_eq!(prop1_poly(2, &Poly::one()).unwrap(), p(&[0, 2, 3, 1]));
        assert_eq!(prop1_poly(3, &Poly::zero()).unwrap(), p(&[0, 2, 1, -1]));
        assert!(prop1_poly(2, &Poly::zero()).is_err());
        assert!(prop1_poly(1, &Poly::one()).is_err());
        for k in 2..=5 {
            for g in [p(&[1]), p(&[0, 1]), p(&[3, 0, -1])] {
                let f = prop1_poly(k, &g).unwrap();
                let (kk, gg) = prop1_match(&f).unwrap();
                // A larger k can also match; it then reconstructs f as well.
                assert!(kk >= k);
                assert_eq!(prop1_poly(kk, &gg).unwrap(), f);
            }
        }
    }

    #[test]
    fn wz_examples() {
        assert_eq!(wz_sum(0), BigInt::from(-1));
        assert_eq!(wz_sum(2), BigInt::from(-3));
        assert_eq!(wz_sum(5), BigInt::from(6));
        for m in 0..=50u32 {
            let want = if m % 2 == 0 { -(m as i64 + 1) } else { m as i64 + 1 };
            assert_eq!(wz_sum(m), BigInt::from(want), "m = {m}");
        }
    }

    #[test]
    fn quotient_identity_examples() {
        assert_eq!(eq2_quotient(0).unwrap(), p(&[-1]));
        assert_eq!(eq2_quotient(1).unwrap(), p(&[3, 1]));
        for t in 0..=20 {
            eq2_quotient(t).unwrap();
        }
    }

    #[test]
    fn family_kind_parses() {
        for k in FamilyKind::MAIN {
            assert_eq!(k.as_str().parse::<FamilyKind>().unwrap(), k);
        }
        assert!("VIII".parse::<FamilyKind>().is_err());
    }

    proptest! {
        #[test]
        fn reflect_is_involution(c in proptest::collection::vec(-50i64..=50, 0..8)) {
            let f = Poly::from_i64(&c);
            prop_assert_eq!(reflect(&reflect(&f)), f);
        }
    }
}


use super::{degree_two_set, reflect, main_witness, verify_class, FamilyClass, FamilyKind};
use crate::cf::{euclid_expand, CfExpansion, ConvergentMatrix, DoublingVariant};
use crate::error::{Error, Result};
use crate::polycore::{iterates, product_from_iterates, Poly};

/// Sₙ for f, constructed with the recurrence of the given family.
///
/// Every step is checked against Πₘ₊₁ = Πₘ·(1 + 1/fₘ₊₁) by cross
/// multiplication, and the final value against the unreduced product.
pub fn build_expansion(f: &Poly, class: &FamilyClass, n: usize) -> Result<CfExpansion> {
    verify_class(f, class)?;
    build_expansion_unchecked(f, class, n)
}

/// [`build_expansion`] without re-deriving the class; the caller vouches
/// that `class` came from [`super::classify`] for this f.
pub fn build_expansion_unchecked(f: &Poly, class: &FamilyClass, n: usize) -> Result<CfExpansion> {
    let its = iterates(f, n)?;
    let cf = match class.kind {
        FamilyKind::DegreeTwo => return degree_two(f, &its),
        FamilyKind::Unknown => {
            return Err(Error::ClassMismatch {
                class: "Unknown".into(),
                reason: "no construction for Unknown".into(),
            })
        }
        FamilyKind::VII => seven(f, n)?,
        kind => {
            let w = match kind {
                FamilyKind::Prop1 => class.witness.clone().unwrap_or_else(Poly::zero),
                _ => main_witness(f, kind).ok_or_else(|| Error::ClassMismatch {
                    class: kind.to_string(),
                    reason: "congruence fails".into(),
                })?,
            };
            let mut b = Builder::start();
            for m in 0..n {
                b.step(kind, &w, &its, m)?;
            }
            b.cf
        }
    };
    check_value(&cf, &its)?;
    Ok(cf)
}

struct Builder {
    cf: CfExpansion,
    m: ConvergentMatrix,
}

fn non_integral(what: &str, step: usize) -> Error {
    Error::NonIntegral {
        what: what.into(),
        step,
    }
}

fn exact(num: &Poly, den: &Poly, what: &str, step: usize) -> Result<Poly> {
    num.div_exact(den)?.ok_or_else(|| non_integral(what, step))
}

impl Builder {
    /// S₀ = [1; x]
    fn start() -> Self {
        let mut m = ConvergentMatrix::seed(&Poly::one());
        m.push(&Poly::x());
        Builder {
            cf: CfExpansion::from_polys(Poly::one(), vec![Poly::x()]),
            m,
        }
    }

    fn push(&mut self, q: Poly) {
        self.m.push(&q);
        self.cf.push(q);
    }

    fn word(&self) -> Vec<Poly> {
        let (_, w) = self.cf.int_parts().expect("builder words are integral");
        w.into_iter().cloned().collect()
    }

    fn sign(&self) -> Poly {
        Poly::constant(self.m.sign())
    }

    /// Y solving fₘ₊₁ = H(Y) for the folding lemma or a doubling variant.
    fn solve(&self, variant: Option<DoublingVariant>, target: &Poly, step: usize) -> Result<Poly> {
        let s = self.sign();
        let (a, b) = (&self.m.a, &self.m.b);
        let ab = a * b;
        let one = Poly::one();
        let y = match variant {
            None => exact(&(&s * target), &ab, "Y", step)?,
            Some(DoublingVariant::A) => {
                let num = &(&s * target) + &(a * &(a - &self.m.b_prev));
                &exact(&num, &ab, "Y", step)? - &one
            }
            Some(DoublingVariant::B) => exact(&(&s * &(target + &one)), &ab, "Y", step)?,
            Some(DoublingVariant::C) => {
                let two_ap_b = (&self.m.a_prev * b).scale(&2.into());
                let num = &(&s * &(target + &one)) - &two_ap_b;
                exact(&num, &ab, "Y", step)?
            }
            Some(DoublingVariant::D) => {
                let num = &(&s * target) - &(a * &(a + &self.m.b_prev));
                &exact(&num, &ab, "Y", step)? + &one
            }
        };
        if y.is_zero() {
            return Err(non_integral("Y (zero)", step));
        }
        Ok(y)
    }

    /// Append Y and the mirrored word for the folding lemma or a doubling.
    fn extend(&mut self, variant: Option<DoublingVariant>, y: Poly) {
        let w = self.word();
        self.push(y);
        match variant {
            None | Some(DoublingVariant::B) => {
                w.iter().rev().for_each(|q| self.push(-q));
                if variant.is_some() {
                    self.push(Poly::constant(-1));
                }
            }
            Some(DoublingVariant::A) => w.iter().for_each(|q| self.push(-q)),
            Some(DoublingVariant::C) => {
                w.iter().rev().for_each(|q| self.push(q.clone()));
                self.push(Poly::one());
            }
            Some(DoublingVariant::D) => w.into_iter().for_each(|q| self.push(q)),
        }
    }

    /// Of ±y, the one equal to the exact solution; exactly one must match.
    fn pick_sign(&self, y: Poly, exact_y: &Poly, step: usize) -> Result<Poly> {
        let neg = -&y;
        match (&y == exact_y, &neg == exact_y) {
            (true, false) => Ok(y),
            (false, true) => Ok(neg),
            _ => Err(Error::Internal(format!(
                "family formula for Y does not match the matrix identity at step {step}"
            ))),
        }
    }

    /// Extend Sₘ to Sₘ₊₁.
    fn step(&mut self, kind: FamilyKind, w: &Poly, its: &[Poly], m: usize) -> Result<()> {
        let fm = &its[m];
        let next = &its[m + 1];
        let before = (self.m.a.clone(), self.m.b.clone());
        let one = Poly::one();
        match kind {
            FamilyKind::I => {
                let exact_y = self.solve(None, next, m)?;
                let ab = &self.m.a * &self.m.b;
                let y = self.pick_sign(exact(next, &ab, "Y", m)?, &exact_y, m)?;
                self.extend(None, y);
            }
            FamilyKind::II => {
                // Sₘ₊₁ = Sₘ plus αₘ₊₂ = −((fₘ+1)/pₘ)·G(fₘ)·pₘ₋₁
                let ratio = exact(&(fm + &one), &self.m.a, "alpha", m)?;
                let alpha = -&(&(&ratio * &w.compose(fm)) * &self.m.a_prev);
                if alpha.is_zero() {
                    return Err(non_integral("alpha (zero)", m));
                }
                self.push(alpha);
            }
            FamilyKind::III => {
                let y = self.solve(Some(DoublingVariant::B), next, m)?;
                self.extend(Some(DoublingVariant::B), y);
            }
            FamilyKind::IV => {
                let exact_y = self.solve(Some(DoublingVariant::C), next, m)?;
                let y = if m == 0 {
                    // S₁ = [1; x, −G, x, 1] with G = (x−1)g + 2
                    let g_big = &(&Poly::from_i64(&[-1, 1]) * w) + &Poly::constant(2);
                    -g_big
                } else {
                    // Yₘ = (fₘ/qₘ)·((fₘ²−1)/pₘ)·g(fₘ)
                    let a = exact(fm, &self.m.b, "Y", m)?;
                    let b = exact(&(&(fm * fm) - &one), &self.m.a, "Y", m)?;
                    &(&a * &b) * &w.compose(fm)
                };
                let y = self.pick_sign(y, &exact_y, m)?;
                self.extend(Some(DoublingVariant::C), y);
            }
            FamilyKind::V => {
                let exact_y = self.solve(Some(DoublingVariant::D), next, m)?;
                // Yₘ − 2 = ±(fₘ(fₘ+2)/qₘ)·g(fₘ)
                let t = exact(&(fm * &(fm + &Poly::constant(2))), &self.m.b, "Y", m)?;
                let d = &t * &w.compose(fm);
                let two = Poly::constant(2);
                let y = if &two + &d == exact_y {
                    &two + &d
                } else if &two - &d == exact_y && !d.is_zero() {
                    &two - &d
                } else {
                    return Err(Error::Internal(format!(
                        "family formula for Y does not match the matrix identity at step {m}"
                    )));
                };
                self.extend(Some(DoublingVariant::D), y);
            }
            FamilyKind::VI => {
                // fₘ₊₁ = αβ − p′q with β = −pq
                let pq = &self.m.a * &self.m.b;
                let ap_q = &self.m.a_prev * &self.m.b;
                let alpha = -exact(&(next + &ap_q), &pq, "alpha", m)?;
                if m >= 1 {
                    let closed = -exact(&(next - &(fm * fm)), &pq, "alpha", m)?;
                    if closed != alpha {
                        return Err(Error::Internal(format!("alpha mismatch at step {m}")));
                    }
                }
                let beta = -pq;
                if alpha.is_zero() {
                    return Err(non_integral("alpha (zero)", m));
                }
                self.push(alpha);
                self.push(beta);
            }
            FamilyKind::Prop1 => {
                let y = self.solve(Some(DoublingVariant::A), next, m)?;
                self.extend(Some(DoublingVariant::A), y);
            }
            _ => unreachable!("handled by the caller"),
        }
        // Πₘ₊₁ = (A/B)·(fₘ₊₁+1)/fₘ₊₁
        let lhs = &(&self.m.a * &before.1) * next;
        let rhs = &(&self.m.b * &before.0) * &(next + &one);
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "{kind} step {m} does not multiply the value by 1 + 1/f_{}",
                m + 1
            )));
        }
        Ok(())
    }
}

fn check_value(cf: &CfExpansion, its: &[Poly]) -> Result<()> {
    let m = crate::cf::final_convergent(cf)?;
    let mut num = Poly::one();
    let mut den = Poly::one();
    for fi in its {
        num = &num * &(fi + &Poly::one());
        den = &den * fi;
    }
    if &m.a * &den != &m.b * &num {
        return Err(Error::Internal("constructed expansion has the wrong value".into()));
    }
    Ok(())
}

fn degree_two(f: &Poly, its: &[Poly]) -> Result<CfExpansion> {
    debug_assert!(degree_two_set().contains(f));
    let e = euclid_expand(&product_from_iterates(its)?)?;
    if let Some(step) = e.first_non_integral {
        return Err(non_integral("quotient", step));
    }
    Ok(e.cf)
}

/// Class VII through its reflection h = −f(−x−1) − 1, which is class VI.
/// With y = −x−1 and Sₙ(h) = [1; a₁, a₂, …],
/// Πₙ(f)(x) = 1/Πₙ(h)(y) = [0; 1, a₁(y), a₂(y), …] = [1; −a₁(y)−1, −a₂(y), …].
fn seven(f: &Poly, n: usize) -> Result<CfExpansion> {
    let h = reflect(f);
    let g = main_witness(&h, FamilyKind::VI).ok_or_else(|| {
        Error::Internal("reflection of a class VII polynomial is not class VI".into())
    })?;
    let class = FamilyClass {
        kind: FamilyKind::VI,
        witness: Some(g),
        k: None,
    };
    let sh = build_expansion_unchecked(&h, &class, n)?;
    let (_, word) = sh.int_parts()?;
    let mut out = Vec::with_capacity(word.len());
    for (i, q) in word.into_iter().enumerate() {
        let r = -q.reflect_argument();
        out.push(if i == 0 { &r - &Poly::one() } else { r });
    }
    Ok(CfExpansion::from_polys(Poly::one(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::classify;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn class_of(f: &Poly, kind: FamilyKind) -> FamilyClass {
        classify(f)
            .unwrap()
            .into_iter()
            .find(|c| c.kind == kind)
            .unwrap_or_else(|| panic!("{f} is not class {kind}"))
    }

    fn build(f: &Poly, kind: FamilyKind, n: usize) -> CfExpansion {
        build_expansion(f, &class_of(f, kind), n).unwrap()
    }

    fn cf(word: &[Poly]) -> CfExpansion {
        CfExpansion::from_polys(Poly::one(), word.to_vec())
    }

    #[test]
    fn first_steps_match_known_expansions() {
        let x = Poly::x();
        // (x+1)²(x−1), G = x
        assert_eq!(build(&p(&[-1, -1, 1, 1]), FamilyKind::II, 1), cf(&[x.clone(), -&x]));
        // x(x+1)² − 1, G = x + 1
        assert_eq!(
            build(&p(&[-1, 1, 2, 1]), FamilyKind::III, 1),
            cf(&[x.clone(), p(&[-1, -1]), -&x, p(&[-1])])
        );
        assert_eq!(
            build(&p(&[0, 0, 1, 1]), FamilyKind::I, 1),
            cf(&[x.clone(), -&x, -&x])
        );
        assert_eq!(
            build(&Poly::monomial(1, 4), FamilyKind::VI, 1),
            cf(&[x.clone(), p(&[-1, 1, -1]), p(&[0, -1, -1])])
        );
    }

    #[test]
    fn zero_steps_is_the_seed() {
        let f = p(&[0, 0, 1, 1]);
        assert_eq!(build(&f, FamilyKind::I, 0), cf(&[Poly::x()]));
    }

    #[test]
    fn class_mismatch_is_rejected() {
        let f = p(&[0, 0, 0, 1]);
        let wrong = FamilyClass {
            kind: FamilyKind::I,
            witness: None,
            k: None,
        };
        assert!(matches!(
            build_expansion(&f, &wrong, 1),
            Err(Error::ClassMismatch { .. })
        ));
        assert!(matches!(
            build_expansion(&f, &FamilyClass::unknown(), 1),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn seven_agrees_with_euclid() {
        let (a, b) = super::super::main_form(FamilyKind::VII);
        let f = &a + &b;
        for n in 0..=3 {
            let built = build(&f, FamilyKind::VII, n);
            let e = euclid_expand(&crate::polycore::product_truncate(&f, n).unwrap()).unwrap();
            assert_eq!(e.first_non_integral, None);
            assert_eq!(built, e.cf, "n = {n}");
        }
    }
}

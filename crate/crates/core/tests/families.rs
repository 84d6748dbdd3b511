use prodfrac::cf::{convergents, euclid_expand, final_convergent, value_of, CfExpansion};
use prodfrac::families::{
    build_expansion, classify, degree_two_set, prop1_poly, reflect, representatives, FamilyClass,
    FamilyKind,
};
use prodfrac::polycore::{iterates, product_truncate};
use prodfrac::{Poly, RatFunc};

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

fn divides(a: &Poly, b: &Poly) -> bool {
    b.div_exact(a).unwrap().is_some()
}

fn up_to_sign(a: &Poly, b: &Poly) -> bool {
    a == b || a == &-b
}

#[test]
fn construction_matches_euclid() {
    for (kind, f) in representatives() {
        let class = class_of(&f, kind);
        for n in 0..=3 {
            let built = build_expansion(&f, &class, n).unwrap();
            let e = euclid_expand(&product_truncate(&f, n).unwrap()).unwrap();
            assert_eq!(e.first_non_integral, None, "{kind} {f} n={n}");
            assert_eq!(built.merge_units().unwrap(), e.cf, "{kind} {f} n={n}");
            for m in convergents(&built).unwrap() {
                assert_eq!(m.determinant(), m.expected_determinant());
            }
        }
    }
}

#[test]
fn divisibility_facts() {
    let one = Poly::one();
    for (kind, f) in representatives() {
        let class = class_of(&f, kind);
        let its = iterates(&f, 4).unwrap();
        for n in 0..=3 {
            let m = final_convergent(&build_expansion(&f, &class, n).unwrap()).unwrap();
            let (pn, qn, fnn) = (&m.a, &m.b, &its[n]);
            match kind {
                FamilyKind::I => assert!(divides(qn, &(fnn * fnn)), "{f} n={n}"),
                FamilyKind::II => {
                    assert!(divides(&(fnn + &one), &its[n + 1]));
                    assert!(divides(fnn, &(&its[n + 1] + &one)));
                }
                FamilyKind::III => assert!(divides(&(pn * qn), &(&its[n + 1] + &one))),
                FamilyKind::IV => assert!(up_to_sign(qn, fnn), "{f} n={n}"),
                FamilyKind::V => assert!(up_to_sign(pn, &(fnn + &one)), "{f} n={n}"),
                FamilyKind::VI => {
                    let num = its[..=n].iter().fold(one.clone(), |acc, fj| &acc * &(fj + &one));
                    let den = its[..=n].iter().fold(one.clone(), |acc, fj| &acc * fj);
                    assert_eq!((pn, qn), (&num, &den), "{f} n={n}");
                }
                _ => {}
            }
        }
    }
}

#[test]
fn prefix_property_for_degree_three_and_up() {
    for (kind, f) in representatives().into_iter().step_by(3) {
        let mut prev = None::<CfExpansion>;
        for n in 0..=3 {
            let e = euclid_expand(&product_truncate(&f, n).unwrap()).unwrap();
            if let Some(prev) = &prev {
                assert!(prev.is_prefix_of(&e.cf), "{kind} {f} n={n}");
            }
            prev = Some(e.cf);
        }
    }
}

#[test]
fn degree_two_set_is_specializable_and_stable() {
    for f in degree_two_set() {
        let class = class_of(&f, FamilyKind::DegreeTwo);
        let mut prev: Option<CfExpansion> = None;
        for n in 0..=6 {
            let cf = build_expansion(&f, &class, n).unwrap();
            if let Some(prev) = &prev {
                let k = prodfrac::cf::degree_two_stable_prefix(prev, n - 1);
                let (ph, pw) = prev.int_parts().unwrap();
                let (h, w) = cf.int_parts().unwrap();
                assert_eq!(ph, h);
                assert_eq!(&pw[..k], &w[..k], "{f} n={n}");
            }
            prev = Some(cf);
        }
    }
}

#[test]
fn negative_control_is_not_specializable() {
    let f = p(&[1, 0, 1]);
    assert_eq!(classify(&f).unwrap()[0].kind, FamilyKind::Unknown);
    let hit = (0..=6).any(|n| {
        euclid_expand(&product_truncate(&f, n).unwrap())
            .unwrap()
            .first_non_integral
            .is_some()
    });
    assert!(hit);
}

#[test]
fn degree_k_family_is_specializable_up_to_k() {
    for k in 2..=4u32 {
        for g in [p(&[1]), p(&[0, 1])] {
            let f = prop1_poly(k, &g).unwrap();
            let class = class_of(&f, FamilyKind::Prop1);
            for m in 0..=k as usize {
                let e = euclid_expand(&product_truncate(&f, m).unwrap()).unwrap();
                assert_eq!(e.first_non_integral, None, "k={k} g={g} m={m}");
                if class.k == Some(k) {
                    let built = build_expansion(&f, &class, m).unwrap();
                    assert_eq!(built, e.cf, "k={k} g={g} m={m}");
                }
            }
        }
    }
}

/// ∏(1 + 1/gₖ(x)) = ∏ f(−x−1)/(fₖ(−x−1) + 1) for g = −f(−x−1) − 1.
#[test]
fn reflection_product_identity() {
    let f = Poly::monomial(1, 4);
    let g = reflect(&f);
    assert!(classify(&g).unwrap().iter().any(|c| c.kind == FamilyKind::VII));
    let fy = iterates(&f, 3).unwrap();
    for n in 0..=3 {
        let lhs = value_of(&build_expansion(&g, &class_of(&g, FamilyKind::VII), n).unwrap()).unwrap();
        let mut num = Poly::one();
        let mut den = Poly::one();
        for fk in &fy[..=n] {
            let fk = fk.reflect_argument();
            num = &num * &fk;
            den = &den * &(&fk + &Poly::one());
        }
        assert_eq!(lhs, RatFunc::new(num, den).unwrap(), "n={n}");
    }
}

#[test]
fn witness_reconstructs_f() {
    for (_, f) in representatives() {
        for c in classify(&f).unwrap() {
            if c.kind != FamilyKind::DegreeTwo {
                assert_eq!(c.reconstruct(), Some(f.clone()), "{c}");
            }
        }
    }
}

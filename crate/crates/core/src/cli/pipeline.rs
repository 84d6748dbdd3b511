//! Shared expansion and verification drivers behind the commands.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{class_json, render};
use crate::cf::{convergents, euclid_expand, CfExpansion};
use crate::error::{Error, Result};
use crate::families::{build_expansion, classify, FamilyClass, FamilyKind};
use crate::polycore::{product_truncate, Poly};
use crate::specialize::{eval_cf, orbit, product_value, rational_to_regular, regularize, IntSeq, RegularCF};

/// Arguments at which `verify` checks specialization.
pub const VERIFY_POINTS: [i64; 3] = [2, 3, 5];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    Construction(FamilyClass),
    Euclid,
}

impl Route {
    pub fn label(&self) -> &'static str {
        match self {
            Route::Construction(_) => "construction",
            Route::Euclid => "euclid",
        }
    }

    pub fn class(&self) -> Option<&FamilyClass> {
        match self {
            Route::Construction(c) => Some(c),
            Route::Euclid => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub route: Route,
    pub n: usize,
    pub cf: CfExpansion,
    /// 1-based position of the first quotient outside ℤ[x].
    pub first_non_integral: Option<usize>,
}

impl Expansion {
    /// Substitute x = M and regularize, after checking the orbit condition.
    pub fn specialize(&self, f: &Poly, m: &BigInt) -> Result<(IntSeq, RegularCF)> {
        orbit(f, m, self.n)?;
        if let Some(index) = self.first_non_integral {
            return Err(Error::NonSpecializable { index });
        }
        let raw = eval_cf(&self.cf, m)?;
        let reg = regularize(&raw)?;
        Ok((raw, reg))
    }
}

fn euclid_route(f: &Poly, n: usize) -> Result<Expansion> {
    let e = euclid_expand(&product_truncate(f, n)?)?;
    Ok(Expansion {
        route: Route::Euclid,
        n,
        cf: e.cf,
        first_non_integral: e.first_non_integral,
    })
}

/// Sₙ for f by the requested family's construction, by the first matching
/// family, or by the Euclidean algorithm when no family applies.
pub fn expand(f: &Poly, n: usize, family: Option<FamilyKind>) -> Result<Expansion> {
    let classes = classify(f)?;
    let class = match family {
        Some(FamilyKind::Unknown) => return euclid_route(f, n),
        Some(kind) => Some(classes.into_iter().find(|c| c.kind == kind).ok_or_else(|| {
            Error::ClassMismatch {
                class: kind.to_string(),
                reason: format!("{f} does not have the form of this family"),
            }
        })?),
        None => classes.into_iter().find(|c| c.kind != FamilyKind::Unknown),
    };
    let Some(class) = class else {
        return euclid_route(f, n);
    };
    match build_expansion(f, &class, n) {
        Ok(cf) => Ok(Expansion {
            route: Route::Construction(class),
            n,
            cf,
            first_non_integral: None,
        }),
        // beyond its k the degree-k family makes no claim; report what Euclid finds
        Err(Error::NonIntegral { .. }) if family.is_none() && class.kind == FamilyKind::Prop1 => {
            euclid_route(f, n)
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointStatus {
    Match,
    Mismatch,
    OrbitViolation(usize),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub n: usize,
    pub class: Option<FamilyClass>,
    pub first_non_integral: Option<usize>,
    /// Construction equals the Euclidean expansion after unit merging.
    pub oracle: bool,
    pub determinant: bool,
    pub points: Vec<(i64, PointStatus)>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.oracle && self.determinant && self.points.iter().all(|(_, s)| s != &PointStatus::Mismatch)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub poly: Poly,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let points: Vec<Value> = c
                    .points
                    .iter()
                    .map(|(m, s)| match s {
                        PointStatus::Match => json!({ "at": m.to_string(), "status": "match" }),
                        PointStatus::Mismatch => json!({ "at": m.to_string(), "status": "mismatch" }),
                        PointStatus::OrbitViolation(j) => json!({
                            "at": m.to_string(),
                            "status": "orbit-violation",
                            "index": j.to_string(),
                        }),
                    })
                    .collect();
                json!({
                    "n": c.n.to_string(),
                    "family": c.class.as_ref().map(class_json),
                    "firstNonIntegral": c.first_non_integral.map(|i| i.to_string()),
                    "oracle": c.oracle,
                    "determinant": c.determinant,
                    "specialization": points,
                    "passed": c.passed(),
                })
            })
            .collect();
        json!({ "poly": render(&self.poly), "checks": checks, "passed": self.passed() })
    }
}

fn determinant_holds(cf: &CfExpansion) -> Result<bool> {
    Ok(convergents(cf)?.iter().all(|m| m.determinant() == m.expected_determinant()))
}

fn point_checks(f: &Poly, cf: &CfExpansion, n: usize) -> Result<Vec<(i64, PointStatus)>> {
    VERIFY_POINTS
        .iter()
        .map(|&m| {
            let big = BigInt::from(m);
            if let Err(Error::OrbitViolation { index, .. }) = orbit(f, &big, n) {
                return Ok((m, PointStatus::OrbitViolation(index)));
            }
            let reg = regularize(&eval_cf(cf, &big)?)?;
            let oracle = rational_to_regular(&product_value(f, &big, n)?);
            let status = if reg == oracle {
                PointStatus::Match
            } else {
                PointStatus::Mismatch
            };
            Ok((m, status))
        })
        .collect()
}

/// For every n ≤ `max_n` and every family f belongs to: the construction
/// against the Euclidean oracle, the determinant identity at every prefix,
/// and specialization at x ∈ {2, 3, 5} against the exact product value.
/// Polynomials outside every family only get the Euclidean expansion.
pub fn verify(f: &Poly, max_n: usize) -> Result<VerifyReport> {
    let classes: Vec<FamilyClass> = classify(f)?
        .into_iter()
        .filter(|c| c.kind != FamilyKind::Unknown)
        .collect();
    let mut checks = Vec::new();
    for n in 0..=max_n {
        let e = euclid_expand(&product_truncate(f, n)?)?;
        if classes.is_empty() {
            let points = if e.first_non_integral.is_none() {
                point_checks(f, &e.cf, n)?
            } else {
                Vec::new()
            };
            checks.push(Check {
                n,
                class: None,
                first_non_integral: e.first_non_integral,
                oracle: true,
                determinant: e.first_non_integral.is_some() || determinant_holds(&e.cf)?,
                points,
            });
            continue;
        }
        for class in &classes {
            if class.kind == FamilyKind::Prop1 && class.k.is_some_and(|k| n > k as usize) {
                continue;
            }
            let built = build_expansion(f, class, n)?;
            let oracle = e.first_non_integral.is_none() && built.merge_units()? == e.cf;
            checks.push(Check {
                n,
                class: Some(class.clone()),
                first_non_integral: e.first_non_integral,
                oracle,
                determinant: determinant_holds(&built)?,
                points: point_checks(f, &built, n)?,
            });
        }
    }
    Ok(VerifyReport {
        poly: f.clone(),
        checks,
    })
}

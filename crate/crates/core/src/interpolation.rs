//! Parameter arithmetic for real and complex interpolation of Sobolev scales,
//! and interpolation of proved bilinear estimates.

use serde::{Deserialize, Serialize};

use crate::condition::{AtomicCondition, Relation};
use crate::error::{InterpError, QueryError};
use crate::rational::Rational;
use crate::rules::{check_multiplication, Certificate, MultQuery, RuleId, Status};
use crate::space::{Family, SpaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterpMethod {
    /// Real method `(A0, A1)_{theta, q}` with secondary exponent `q`.
    Real { secondary: Rational },
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpParams {
    pub theta: Rational,
    pub method: InterpMethod,
    pub admissible: bool,
    pub caveats: Vec<String>,
}

fn check_theta(theta: &Rational) -> Result<(), InterpError> {
    if theta.is_positive() && *theta < Rational::one() {
        Ok(())
    } else {
        Err(InterpError::ThetaOutOfRange(theta.to_string()))
    }
}

/// `(1 - theta) a + theta b`
fn affine(a: &Rational, b: &Rational, theta: &Rational) -> Rational {
    (Rational::one() - theta) * a + theta * b
}

/// Interpolated spec: `s = (1-θ)s0 + θs1`, `1/p = (1-θ)/p0 + θ/p1`.
///
/// The arithmetic is always returned. `admissible` reports whether a known
/// identification of the interpolation space covers the case; otherwise
/// `caveats` names what is missing.
pub fn interpolate_specs(
    a: &SpaceSpec,
    b: &SpaceSpec,
    theta: &Rational,
) -> Result<(SpaceSpec, InterpParams), InterpError> {
    check_theta(theta)?;
    if a.domain != b.domain {
        return Err(QueryError::DomainMismatch(a.domain.to_string(), b.domain.to_string()).into());
    }
    if a.family != b.family {
        return Err(QueryError::FamilyMismatch(a.family.to_string(), b.family.to_string()).into());
    }

    let s = affine(&a.s, &b.s, theta);
    let p = affine(&a.p.recip(), &b.p.recip(), theta).recip();
    let out = SpaceSpec::new(a.family, s.clone(), p.clone(), a.domain);

    let mut caveats = Vec::new();
    let one = Rational::one();
    let mut base_ok = true;
    if a.s.is_negative() || b.s.is_negative() {
        caveats.push("endpoint smoothness must be non-negative".to_string());
        base_ok = false;
    }
    if a.p <= one || b.p <= one {
        caveats.push("endpoint integrability must satisfy 1 < p".to_string());
        base_ok = false;
    }

    let (s0_int, s1_int, s_int) = (a.s.is_integer(), b.s.is_integer(), s.is_integer());
    let (method, admissible) = match a.family {
        Family::H => (InterpMethod::Complex, base_ok),
        Family::Bpp => {
            caveats.push("no interpolation identity recorded for the Bpp family".to_string());
            (InterpMethod::Real { secondary: p.clone() }, false)
        }
        Family::W => {
            let real_non_integer = !s0_int && !s1_int && !s_int;
            let real_integer_end = s1_int && !s_int;
            let complex_embedding = !s0_int && !s1_int && p >= Rational::from_integer(2);
            if real_non_integer || real_integer_end {
                (InterpMethod::Real { secondary: p.clone() }, base_ok)
            } else if complex_embedding {
                caveats.push(
                    "s is an integer: only W^{s,p} embeds into the complex interpolation space (p >= 2)"
                        .to_string(),
                );
                (InterpMethod::Complex, base_ok)
            } else {
                if s_int {
                    caveats.push("s is an integer; the real-interpolation cases exclude it".to_string());
                } else if s0_int && !s1_int {
                    caveats.push(
                        "mixed pattern s0 in Z, s1 not in Z is not a listed real-interpolation case".to_string(),
                    );
                }
                (InterpMethod::Real { secondary: p.clone() }, false)
            }
        }
    };

    Ok((
        out,
        InterpParams {
            theta: theta.clone(),
            method,
            admissible,
            caveats,
        },
    ))
}

/// A suggested admissible neighbour obtained by lowering `s` by
/// `eps = min{1, slacks...} / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonShift {
    pub epsilon: Rational,
    /// Labels of the terms attaining the minimum.
    pub active: Vec<String>,
    pub neighbor: SpaceSpec,
}

/// Shifts `spec.s` down by half the smallest slack. `slacks` are the positive
/// margins of the strict inequalities that must survive the shift; the unit
/// term keeps an integer `s` strictly between `s - 1` and `s`, so the
/// neighbour is never an integer. Returns `None` if some slack is not
/// positive.
pub fn epsilon_shift(spec: &SpaceSpec, slacks: &[(&str, Rational)]) -> Option<EpsilonShift> {
    if slacks.iter().any(|(_, v)| !v.is_positive()) {
        return None;
    }
    let mut terms: Vec<(&str, Rational)> = vec![("unit", Rational::one())];
    if !spec.s.is_integer() {
        terms.push(("distance to floor(s)", &spec.s - spec.s.floor()));
    }
    terms.extend(slacks.iter().cloned());
    let min = terms.iter().map(|(_, v)| v).min().cloned()?;
    let active = terms
        .iter()
        .filter(|(_, v)| *v == min)
        .map(|(l, _)| l.to_string())
        .collect();
    let epsilon = min / Rational::from_integer(2);
    let mut neighbor = spec.clone();
    neighbor.s = &spec.s - &epsilon;
    Some(EpsilonShift {
        epsilon,
        active,
        neighbor,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BilinearMethod {
    Complex,
    /// Secondary exponents of the two factors and the product.
    Real {
        p: Rational,
        q: Rational,
        r: Rational,
    },
}

/// Interpolates two proved bilinear estimates at `theta`.
///
/// Both endpoints are re-checked with the rule engine; their certificates are
/// embedded (labels prefixed `end0:` / `end1:`) in the returned certificate.
pub fn interpolate_bilinear(
    end0: &MultQuery,
    end1: &MultQuery,
    theta: &Rational,
    method: &BilinearMethod,
) -> Result<(MultQuery, Certificate), InterpError> {
    check_theta(theta)?;
    let mut endpoint_certs = Vec::with_capacity(2);
    for (i, end) in [end0, end1].into_iter().enumerate() {
        let verdict = check_multiplication(end)?;
        match (verdict.status, verdict.certificate) {
            (Status::Proved, Some(cert)) => endpoint_certs.push(cert),
            (status, _) => return Err(InterpError::EndpointNotProved(i, status.to_string())),
        }
    }

    let mut conditions = vec![
        AtomicCondition::new("0 < theta", theta.clone(), Relation::Gt, Rational::zero()),
        AtomicCondition::new("theta < 1", theta.clone(), Relation::Lt, Rational::one()),
    ];
    let mut notes = Vec::new();
    match method {
        BilinearMethod::Complex => notes.push("complex method".to_string()),
        BilinearMethod::Real { p, q, r } => {
            let gap = p.recip() + q.recip() - Rational::one();
            if gap.is_negative() {
                return Err(InterpError::SecondaryExponents(format!(
                    "1/{p} + 1/{q} - 1 = {gap} < 0"
                )));
            }
            if r.recip() != gap {
                return Err(InterpError::SecondaryExponents(format!(
                    "1/{r} != 1/{p} + 1/{q} - 1 = {gap}"
                )));
            }
            conditions.push(AtomicCondition::new("1/r = 1/p + 1/q - 1", r.recip(), Relation::Eq, gap.clone()));
            conditions.push(AtomicCondition::new("1/p + 1/q - 1 >= 0", gap, Relation::Ge, Rational::zero()));
            notes.push(format!("real method with secondary exponents ({p}, {q}) -> {r}"));
        }
    }

    let (left, l_params) = interpolate_specs(&end0.left, &end1.left, theta)?;
    let (right, r_params) = interpolate_specs(&end0.right, &end1.right, theta)?;
    let (target, t_params) = interpolate_specs(&end0.target, &end1.target, theta)?;

    for (tag, cert) in ["end0", "end1"].iter().zip(&endpoint_certs) {
        notes.push(format!("{tag} proved by {}", cert.rule));
        conditions.extend(cert.conditions.iter().cloned().map(|mut c| {
            c.label = format!("{tag}/{}: {}", cert.rule, c.label);
            c
        }));
    }
    for (name, params) in [("left", &l_params), ("right", &r_params), ("target", &t_params)] {
        for caveat in &params.caveats {
            notes.push(format!("{name}: {caveat}"));
        }
        if !params.admissible {
            notes.push(format!(
                "{name}: interpolation space not identified with the stated spec; conclusion holds for the abstract interpolation space"
            ));
        }
    }
    notes.push("bilinear interpolation: continuity on both endpoint couples passes to the interpolated couple".to_string());

    Ok((
        MultQuery::new(left, right, target),
        Certificate {
            rule: RuleId::BilinearInterp,
            variant: None,
            conditions,
            notes,
        },
    ))
}

//! Function-space specifications: family, smoothness, integrability, domain.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SpaceError;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Sobolev–Slobodeckij.
    W,
    /// Bessel potential.
    H,
    /// Diagonal Besov `B^s_{p,p}`.
    Bpp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::W => "W",
            Family::H => "H",
            Family::Bpp => "Bpp",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainKind {
    WholeSpace,
    BoundedLipschitz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub n: u32,
}

impl DomainSpec {
    pub fn whole(n: u32) -> Self {
        DomainSpec { kind: DomainKind::WholeSpace, n }
    }

    pub fn bounded(n: u32) -> Self {
        DomainSpec { kind: DomainKind::BoundedLipschitz, n }
    }

    pub fn is_bounded(&self) -> bool {
        self.kind == DomainKind::BoundedLipschitz
    }

    pub fn dim(&self) -> Rational {
        Rational::from_integer(i64::from(self.n))
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DomainKind::WholeSpace => write!(f, "R^{}", self.n),
            DomainKind::BoundedLipschitz => write!(f, "Omega in R^{}", self.n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub family: Family,
    pub s: Rational,
    pub p: Rational,
    pub domain: DomainSpec,
}

impl SpaceSpec {
    pub fn new(family: Family, s: Rational, p: Rational, domain: DomainSpec) -> Self {
        SpaceSpec { family, s, p, domain }
    }

    pub fn w(s: Rational, p: Rational, domain: DomainSpec) -> Self {
        Self::new(Family::W, s, p, domain)
    }

    pub fn h(s: Rational, p: Rational, domain: DomainSpec) -> Self {
        Self::new(Family::H, s, p, domain)
    }

    pub fn bpp(s: Rational, p: Rational, domain: DomainSpec) -> Self {
        Self::new(Family::Bpp, s, p, domain)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{{{},{}}}({})", self.family, self.s, self.p, self.domain)
    }
}

/// A spec that passed [`validate_space`], with the facts rule selection needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidatedSpace {
    pub spec: SpaceSpec,
    pub s_is_integer: bool,
    /// `(-s, p')` when `s < 0`: the space is the dual of this predual.
    pub predual: Option<(Rational, Rational)>,
}

/// `p'` with `1/p + 1/p' = 1`.
pub fn conjugate_exponent(p: &Rational) -> Result<Rational, SpaceError> {
    if *p <= Rational::one() {
        return Err(SpaceError::ConjugateDomain(p.to_string()));
    }
    Ok(p / (p - Rational::one()))
}

/// Checks the exponent range for the family and records integrality and the
/// predual pair. W and Bpp with `s >= 0` accept `1 <= p`; negative smoothness
/// and the H family need `1 < p`.
pub fn validate_space(spec: &SpaceSpec) -> Result<ValidatedSpace, SpaceError> {
    if spec.domain.n == 0 {
        return Err(SpaceError::ZeroDimension);
    }
    let one = Rational::one();
    let strict = spec.s.is_negative() || spec.family == Family::H;
    let (ok, bound) = if strict {
        (spec.p > one, "1 < p < inf")
    } else {
        (spec.p >= one, "1 <= p < inf")
    };
    if !ok {
        let bound = if spec.s.is_negative() {
            "1 < p < inf (negative s requires p > 1)"
        } else {
            bound
        };
        return Err(SpaceError::ExponentOutOfRange {
            family: spec.family.to_string(),
            s: spec.s.to_string(),
            p: spec.p.to_string(),
            bound,
        });
    }
    let predual = if spec.s.is_negative() {
        Some((-&spec.s, conjugate_exponent(&spec.p)?))
    } else {
        None
    };
    Ok(ValidatedSpace {
        spec: spec.clone(),
        s_is_integer: spec.s.is_integer(),
        predual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_exponent(&q(2, 1)).unwrap(), q(2, 1));
        assert_eq!(conjugate_exponent(&q(4, 1)).unwrap(), q(4, 3));
        assert_eq!(conjugate_exponent(&q(3, 2)).unwrap(), q(3, 1));
        assert!(conjugate_exponent(&q(1, 1)).is_err());
        assert!(conjugate_exponent(&q(1, 2)).is_err());
    }

    #[test]
    fn validation_examples() {
        let v = validate_space(&SpaceSpec::w(q(3, 2), q(2, 1), DomainSpec::whole(3))).unwrap();
        assert!(!v.s_is_integer);
        assert!(v.predual.is_none());

        let err = validate_space(&SpaceSpec::w(q(-1, 2), q(1, 1), DomainSpec::whole(3))).unwrap_err();
        assert!(err.to_string().contains("negative s requires p > 1"), "{err}");

        let v = validate_space(&SpaceSpec::w(q(2, 1), q(2, 1), DomainSpec::bounded(2))).unwrap();
        assert!(v.s_is_integer);
    }

    #[test]
    fn negative_s_records_predual() {
        let v = validate_space(&SpaceSpec::w(q(-1, 2), q(4, 1), DomainSpec::whole(1))).unwrap();
        assert_eq!(v.predual, Some((q(1, 2), q(4, 3))));
    }

    #[test]
    fn bessel_needs_p_above_one() {
        assert!(validate_space(&SpaceSpec::h(q(1, 1), q(1, 1), DomainSpec::whole(1))).is_err());
        assert!(validate_space(&SpaceSpec::w(q(1, 1), q(1, 1), DomainSpec::whole(1))).is_ok());
        assert!(validate_space(&SpaceSpec::w(q(1, 1), q(1, 1), DomainSpec::whole(0))).is_err());
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(n in 1i64..1000, d in 1i64..1000) {
            let p = q(n, d) + Rational::one();
            let pc = conjugate_exponent(&p).unwrap();
            prop_assert_eq!(p.recip() + pc.recip(), Rational::one());
            prop_assert_eq!(conjugate_exponent(&pc).unwrap(), p);
        }

        #[test]
        fn validation_is_idempotent(sn in -40i64..40, sd in 1i64..12, pn in 1i64..60, pd in 1i64..12, n in 1u32..4) {
            let spec = SpaceSpec::w(q(sn, sd), q(pn, pd), DomainSpec::whole(n));
            if let Ok(v) = validate_space(&spec) {
                prop_assert_eq!(validate_space(&v.spec).unwrap(), v);
            }
        }
    }
}

use std::cmp::Ordering;

use crate::condition::{AtomicCondition, Relation};
use crate::rational::Rational;

use super::{Attempt, Certificate, Failure, RuleId};

/// Accumulates the conditions of one rule. All conditions are recorded, so a
/// failed attempt can name its first failing hypothesis.
#[derive(Debug, Default)]
pub(crate) struct Hyp {
    conds: Vec<AtomicCondition>,
    notes: Vec<String>,
}

impl Hyp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn req(&mut self, label: impl Into<String>, lhs: Rational, rel: Relation, rhs: Rational) -> bool {
        let c = AtomicCondition::new(label, lhs, rel, rhs);
        let holds = c.holds;
        self.conds.push(c);
        holds
    }

    /// Records the actual ordering of `lhs` and `rhs` (always true). Used for
    /// guards that decide whether a conditional clause is active.
    pub fn fact(&mut self, lhs_name: &str, lhs: Rational, rhs_name: &str, rhs: Rational) -> Ordering {
        let ord = lhs.cmp(&rhs);
        let rel = match ord {
            Ordering::Less => Relation::Lt,
            Ordering::Equal => Relation::Eq,
            Ordering::Greater => Relation::Gt,
        };
        self.conds.push(AtomicCondition::new(
            format!("guard: {lhs_name} {} {rhs_name}", rel.symbol()),
            lhs,
            rel,
            rhs,
        ));
        ord
    }

    /// Records whether `x` is an integer as `x = floor(x)` or `x > floor(x)`.
    pub fn integrality(&mut self, name: &str, x: &Rational) -> bool {
        let floor = x.floor();
        if *x == floor {
            self.conds.push(AtomicCondition::new(
                format!("guard: {name} in Z ({name} = floor({name}))"),
                x.clone(),
                Relation::Eq,
                floor,
            ));
            true
        } else {
            self.conds.push(AtomicCondition::new(
                format!("guard: {name} not in Z ({name} > floor({name}))"),
                x.clone(),
                Relation::Gt,
                floor,
            ));
            false
        }
    }

    /// Requires `x` to be an integer.
    pub fn req_integer(&mut self, label: impl Into<String>, x: &Rational) -> bool {
        self.req(label, x.clone(), Relation::Eq, x.floor())
    }

    /// Requires `x` to be a non-integer.
    pub fn req_non_integer(&mut self, label: impl Into<String>, x: &Rational) -> bool {
        self.req(label, x.clone(), Relation::Gt, x.floor())
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn first_failure(&self) -> Option<&AtomicCondition> {
        self.conds.iter().find(|c| !c.holds)
    }

    pub fn finish(self, rule: RuleId, variant: Option<&str>) -> Result<Certificate, Attempt> {
        match self.first_failure() {
            Some(failed) => Err(Attempt {
                rule,
                variant: variant.map(str::to_string),
                failure: Failure::Condition(failed.clone()),
            }),
            None => Ok(Certificate {
                rule,
                variant: variant.map(str::to_string),
                conditions: self.conds,
                notes: self.notes,
            }),
        }
    }
}

pub(crate) fn not_applicable(rule: RuleId, variant: Option<&str>, why: impl Into<String>) -> Attempt {
    Attempt {
        rule,
        variant: variant.map(str::to_string),
        failure: Failure::NotApplicable(why.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn guards_always_hold() {
        let mut h = Hyp::new();
        assert_eq!(h.fact("a", q(1, 2), "b", q(1, 3)), Ordering::Greater);
        assert!(!h.integrality("s", &q(3, 2)));
        assert!(h.integrality("t", &q(-2, 1)));
        assert!(h.first_failure().is_none());
        let cert = h.finish(RuleId::MultRn, None).unwrap();
        assert_eq!(cert.conditions.len(), 3);
    }

    #[test]
    fn reports_first_failure() {
        let mut h = Hyp::new();
        h.req("ok", q(1, 1), Relation::Le, q(2, 1));
        h.req("bad", q(3, 1), Relation::Le, q(2, 1));
        h.req("worse", q(4, 1), Relation::Le, q(2, 1));
        let attempt = h.finish(RuleId::MultRn, Some("v")).unwrap_err();
        match attempt.failure {
            Failure::Condition(c) => assert_eq!(c.label, "bad"),
            other => panic!("unexpected {other:?}"),
        }
    }
}

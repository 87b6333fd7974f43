use crate::condition::Relation;
use crate::rational::Rational;
use crate::space::{DomainKind, Family};

use super::hyp::Hyp;
use super::{Certificate, MultQuery, RuleId};

/// Fires when a factor shares the non-integer target smoothness but has a
/// strictly larger integrability exponent than the target: on the whole space
/// the modulated-copy sequence `g_N` makes the product estimate grow like
/// `N^(1/p - 1/p_i)`, so no such estimate can hold.
///
/// Only W spaces on the whole space are considered. The left factor is checked
/// first, then the mirrored condition on the right.
pub fn necessity_disproof(q: &MultQuery) -> Option<Certificate> {
    let all_w = [&q.left, &q.right, &q.target]
        .iter()
        .all(|s| s.family == Family::W);
    if !all_w || q.target.domain.kind != DomainKind::WholeSpace {
        return None;
    }
    let factors = [&q.left, &q.right];
    (0..2).find_map(|i| {
        let (this, other) = (factors[i], factors[1 - i]);
        let k = i + 1;
        let o = 2 - i;
        let one = Rational::one();
        let mut h = Hyp::new();
        h.req(format!("s{k} = s"), this.s.clone(), Relation::Eq, q.target.s.clone());
        h.req_non_integer("s not in Z", &q.target.s);
        h.req("s > 0", q.target.s.clone(), Relation::Gt, Rational::zero());
        h.req(format!("s{o} >= 0"), other.s.clone(), Relation::Ge, Rational::zero());
        h.req("p1 > 1", q.left.p.clone(), Relation::Gt, one.clone());
        h.req("p2 > 1", q.right.p.clone(), Relation::Gt, one.clone());
        h.req("p > 1", q.target.p.clone(), Relation::Gt, one);
        h.req(format!("p{k} > p"), this.p.clone(), Relation::Gt, q.target.p.clone());
        h.note(format!(
            "necessity: an estimate W^{{s,p{k}}} x W^{{s{o},p{o}}} -> W^{{s,p}} with non-integer s > 0 forces p{k} <= p"
        ));
        h.note(format!(
            "witness: g_N = sum_j 2^(-s m_j) e^(i 2^(m_j) x) f(x) has ||g_N f||_(s,p) / ||g_N||_(s,p{k}) ~ N^(1/p - 1/p{k}), unbounded"
        ));
        h.finish(RuleId::DisproveNecessity, Some(if i == 0 { "left" } else { "right" }))
            .ok()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::space::{DomainSpec, SpaceSpec};

    fn wq(d: DomainSpec, s1: Rational, p1: Rational, s2: Rational, p2: Rational, s: Rational, p: Rational) -> MultQuery {
        MultQuery::new(SpaceSpec::w(s1, p1, d), SpaceSpec::w(s2, p2, d), SpaceSpec::w(s, p, d))
    }

    #[test]
    fn fires_on_the_holder_counterexample() {
        let cert = necessity_disproof(&wq(DomainSpec::whole(1), q(1, 2), q(4, 1), q(1, 1), q(2, 1), q(1, 2), q(2, 1)))
            .expect("should fire");
        assert_eq!(cert.rule, RuleId::DisproveNecessity);
        assert!(cert.all_hold());
    }

    #[test]
    fn mirrored_on_the_right_factor() {
        let cert = necessity_disproof(&wq(DomainSpec::whole(1), q(1, 1), q(2, 1), q(1, 2), q(4, 1), q(1, 2), q(2, 1)))
            .expect("should fire");
        assert_eq!(cert.variant.as_deref(), Some("right"));
    }

    #[test]
    fn does_not_fire_when_unmet() {
        let d = DomainSpec::whole(1);
        // p1 <= p
        assert!(necessity_disproof(&wq(d, q(1, 2), q(2, 1), q(1, 1), q(2, 1), q(1, 2), q(2, 1))).is_none());
        // integer s
        assert!(necessity_disproof(&wq(d, q(1, 1), q(4, 1), q(1, 1), q(2, 1), q(1, 1), q(2, 1))).is_none());
        // bounded domain
        let b = DomainSpec::bounded(1);
        assert!(necessity_disproof(&wq(b, q(1, 2), q(4, 1), q(1, 1), q(2, 1), q(1, 2), q(2, 1))).is_none());
    }
}

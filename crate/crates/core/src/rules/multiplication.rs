use crate::condition::Relation;
use crate::error::QueryError;
use crate::rational::Rational;
use crate::space::{DomainSpec, Family};

use super::hyp::{not_applicable, Hyp};
use super::necessity::necessity_disproof;
use super::{validate_same_domain, Attempt, Certificate, MultQuery, RuleId, Status, Verdict};

/// Order in which W-family rules are attempted. First match wins.
pub const W_RULE_ORDER: [RuleId; 6] = [
    RuleId::MultInt,
    RuleId::MultRn,
    RuleId::MultBdd,
    RuleId::MultNegI,
    RuleId::MultNegII,
    RuleId::MultUnified,
];

const EXTENSION_NOTE: &str =
    "bounded-domain variant: the whole-space estimate transfers through a continuous extension operator (Lipschitz boundary)";

/// Exponent data of a multiplication query, with reciprocals precomputed.
struct Params {
    domain: DomainSpec,
    n: Rational,
    s: [Rational; 2],
    p: [Rational; 2],
    inv: [Rational; 2],
    st: Rational,
    pt: Rational,
    inv_t: Rational,
}

impl Params {
    fn new(q: &MultQuery) -> Self {
        Params {
            domain: q.target.domain,
            n: q.target.domain.dim(),
            s: [q.left.s.clone(), q.right.s.clone()],
            p: [q.left.p.clone(), q.right.p.clone()],
            inv: [q.left.p.recip(), q.right.p.recip()],
            st: q.target.s.clone(),
            pt: q.target.p.clone(),
            inv_t: q.target.p.recip(),
        }
    }

    /// `n (1/p1 + 1/p2 - 1/p)`
    fn holder_gap(&self) -> Rational {
        &self.n * (&self.inv[0] + &self.inv[1] - &self.inv_t)
    }

    /// `s1 + s2 - s`
    fn smooth_excess(&self) -> Rational {
        &self.s[0] + &self.s[1] - &self.st
    }

    fn s_sum(&self) -> Rational {
        &self.s[0] + &self.s[1]
    }

    fn s_min(&self) -> Rational {
        Rational::min(&self.s[0], &self.s[1])
    }

    fn p_ge_one(&self, h: &mut Hyp) {
        let one = Rational::one();
        h.req("range: p1 >= 1", self.p[0].clone(), Relation::Ge, one.clone());
        h.req("range: p2 >= 1", self.p[1].clone(), Relation::Ge, one.clone());
        h.req("range: p >= 1", self.pt.clone(), Relation::Ge, one);
    }

    fn p_gt_one(&self, h: &mut Hyp) {
        let one = Rational::one();
        h.req("range: p1 > 1", self.p[0].clone(), Relation::Gt, one.clone());
        h.req("range: p2 > 1", self.p[1].clone(), Relation::Gt, one.clone());
        h.req("range: p > 1", self.pt.clone(), Relation::Gt, one);
    }

    fn p_ordered(&self, h: &mut Hyp) {
        h.req("range: p1 <= p", self.p[0].clone(), Relation::Le, self.pt.clone());
        h.req("range: p2 <= p", self.p[1].clone(), Relation::Le, self.pt.clone());
    }

    fn cond_i(&self, h: &mut Hyp) {
        h.req("(i) s1 >= s", self.s[0].clone(), Relation::Ge, self.st.clone());
        h.req("(i) s2 >= s", self.s[1].clone(), Relation::Ge, self.st.clone());
    }

    fn cond_s_nonneg(&self, h: &mut Hyp) {
        h.req("(ii) s >= 0", self.st.clone(), Relation::Ge, Rational::zero());
    }

    fn cond_iii_one(&self, h: &mut Hyp, i: usize, rel: Relation) {
        let k = i + 1;
        h.req(
            format!("(iii) s{k} - s {} n(1/p{k} - 1/p)", rel.symbol()),
            &self.s[i] - &self.st,
            rel,
            &self.n * (&self.inv[i] - &self.inv_t),
        );
    }

    fn cond_iii(&self, h: &mut Hyp, rel: Relation) {
        self.cond_iii_one(h, 0, rel);
        self.cond_iii_one(h, 1, rel);
    }

    fn cond_iv(&self, h: &mut Hyp, rel: Relation) {
        h.req(
            format!("(iv) s1 + s2 - s {} n(1/p1 + 1/p2 - 1/p)", rel.symbol()),
            self.smooth_excess(),
            rel,
            self.holder_gap(),
        );
    }

    fn cond_iv_tail(&self, h: &mut Hyp) {
        h.req(
            "(iv) n(1/p1 + 1/p2 - 1/p) >= 0",
            self.holder_gap(),
            Relation::Ge,
            Rational::zero(),
        );
    }

    /// `n (1/p1 + 1/p2 - 1)`
    fn dual_gap(&self) -> Rational {
        &self.n * (&self.inv[0] + &self.inv[1] - Rational::one())
    }
}

fn mult_int(pr: &Params, strict_iii: bool) -> Result<Certificate, Attempt> {
    let variant = if strict_iii { "strict-(iii)" } else { "strict-(iv)" };
    let mut h = Hyp::new();
    pr.p_ge_one(&mut h);
    pr.cond_i(&mut h);
    pr.cond_s_nonneg(&mut h);
    h.req_integer("(ii) s in N0", &pr.st);
    if strict_iii {
        pr.cond_iii(&mut h, Relation::Gt);
        pr.cond_iv(&mut h, Relation::Ge);
    } else {
        pr.cond_iii(&mut h, Relation::Ge);
        pr.cond_iv(&mut h, Relation::Gt);
    }
    pr.cond_iv_tail(&mut h);
    h.note("integer target smoothness: no ordering between p_i and p required");
    if pr.domain.is_bounded() {
        h.note(EXTENSION_NOTE);
    }
    h.finish(RuleId::MultInt, Some(variant))
}

fn mult_rn(pr: &Params) -> Result<Certificate, Attempt> {
    if pr.domain.is_bounded() {
        return Err(not_applicable(RuleId::MultRn, None, "whole-space rule"));
    }
    let mut h = Hyp::new();
    pr.p_ge_one(&mut h);
    pr.p_ordered(&mut h);
    pr.cond_i(&mut h);
    pr.cond_s_nonneg(&mut h);
    pr.cond_iii(&mut h, Relation::Ge);
    pr.cond_iv(&mut h, Relation::Gt);
    h.finish(RuleId::MultRn, None)
}

fn mult_bdd(pr: &Params) -> Result<Certificate, Attempt> {
    if !pr.domain.is_bounded() {
        return Err(not_applicable(RuleId::MultBdd, None, "bounded-domain rule"));
    }
    let mut h = Hyp::new();
    pr.p_ge_one(&mut h);
    pr.cond_i(&mut h);
    pr.cond_s_nonneg(&mut h);
    pr.cond_iii(&mut h, Relation::Ge);
    let pmax = Rational::max(&pr.p[0], &pr.p[1]);
    let pmin = Rational::min(&pr.p[0], &pr.p[1]);
    if h.fact("max{p1,p2}", pmax, "p", pr.pt.clone()).is_gt() {
        h.req(
            "(iv') s1 + s2 - s > n/min{p1,p2}",
            pr.smooth_excess(),
            Relation::Gt,
            &pr.n / &pmin,
        );
        h.note("max{p1,p2} > p: (iv) replaced by s1 + s2 - s > n/min{p1,p2}; (i)-(iii) retained as stated");
    } else {
        pr.cond_iv(&mut h, Relation::Gt);
    }
    h.finish(RuleId::MultBdd, None)
}

fn mult_neg_i(pr: &Params) -> Result<Certificate, Attempt> {
    let mut h = Hyp::new();
    pr.p_gt_one(&mut h);
    pr.p_ordered(&mut h);
    pr.cond_i(&mut h);
    h.req("(ii) min{s1,s2} < 0", pr.s_min(), Relation::Lt, Rational::zero());
    pr.cond_iii(&mut h, Relation::Ge);
    pr.cond_iv(&mut h, Relation::Gt);
    h.req(
        "(v) s1 + s2 >= n(1/p1 + 1/p2 - 1)",
        pr.s_sum(),
        Relation::Ge,
        pr.dual_gap(),
    );
    if pr.domain.is_bounded() {
        h.note("bounded-domain variant: the requirement 1/p1 + 1/p2 >= 1 is dropped");
        h.note(EXTENSION_NOTE);
    } else {
        h.req(
            "(v) n(1/p1 + 1/p2 - 1) >= 0",
            pr.dual_gap(),
            Relation::Ge,
            Rational::zero(),
        );
    }
    h.note("product defined by density and duality; extends uniquely");
    h.finish(RuleId::MultNegI, None)
}

fn mult_neg_ii(pr: &Params) -> Result<Certificate, Attempt> {
    let mut h = Hyp::new();
    pr.p_gt_one(&mut h);
    pr.cond_i(&mut h);
    h.req("(ii) min{s1,s2} >= 0", pr.s_min(), Relation::Ge, Rational::zero());
    h.req("(ii) s < 0", pr.st.clone(), Relation::Lt, Rational::zero());
    pr.cond_iii(&mut h, Relation::Ge);
    pr.cond_iv(&mut h, Relation::Gt);
    pr.cond_iv_tail(&mut h);
    h.req(
        "(v) s1 + s2 > n(1/p1 + 1/p2 - 1) (strict)",
        pr.s_sum(),
        Relation::Gt,
        pr.dual_gap(),
    );
    if pr.domain.is_bounded() {
        h.note(EXTENSION_NOTE);
    }
    h.note("product defined by density and duality; extends uniquely");
    h.finish(RuleId::MultNegII, None)
}

fn mult_unified(pr: &Params) -> Result<Certificate, Attempt> {
    if pr.domain.is_bounded() {
        return Err(not_applicable(RuleId::MultUnified, None, "whole-space rule"));
    }
    let mut h = Hyp::new();
    pr.p_gt_one(&mut h);
    pr.cond_i(&mut h);
    h.req("s1 + s2 >= 0", pr.s_sum(), Relation::Ge, Rational::zero());
    for i in 0..2 {
        let k = i + 1;
        pr.cond_iii_one(&mut h, i, Relation::Ge);
        // if s_i = s is not an integer, then p_i <= p
        if h.fact(&format!("s{k}"), pr.s[i].clone(), "s", pr.st.clone()).is_eq()
            && !h.integrality("s", &pr.st)
        {
            h.req(
                format!("(iii) s{k} = s not in Z requires p{k} <= p"),
                pr.p[i].clone(),
                Relation::Le,
                pr.pt.clone(),
            );
        }
    }
    pr.cond_iv(&mut h, Relation::Gt);
    pr.cond_iv_tail(&mut h);
    if h.fact("s", pr.st.clone(), "0", Rational::zero()).is_lt() {
        let min_negative = h.fact("min{s1,s2}", pr.s_min(), "0", Rational::zero()).is_lt();
        let rel = if min_negative { Relation::Ge } else { Relation::Gt };
        h.req(
            format!("(v) s1 + s2 {} n(1/p1 + 1/p2 - 1)", rel.symbol()),
            pr.s_sum(),
            rel,
            pr.dual_gap(),
        );
        h.note("negative target: strict (v) required iff min(s1,s2) >= 0; equality admitted when min(s1,s2) < 0");
    }
    if h.fact("s1 + s2", pr.s_sum(), "0", Rational::zero()).is_eq()
        && !h.integrality("min{s1,s2}", &pr.s_min())
    {
        h.req(
            "s1 + s2 = 0 with min{s1,s2} not in Z requires 1/p1 + 1/p2 >= 1",
            &pr.inv[0] + &pr.inv[1],
            Relation::Ge,
            Rational::one(),
        );
    }
    h.finish(RuleId::MultUnified, None)
}

fn holder_h(pr: &Params) -> Result<Certificate, Attempt> {
    if pr.domain.is_bounded() {
        return Err(not_applicable(RuleId::MultHolderH, None, "whole-space rule"));
    }
    let mut h = Hyp::new();
    pr.p_gt_one(&mut h);
    h.req("s1 = s", pr.s[0].clone(), Relation::Eq, pr.st.clone());
    h.req("s2 = s", pr.s[1].clone(), Relation::Eq, pr.st.clone());
    h.req("s >= 0", pr.st.clone(), Relation::Ge, Rational::zero());
    h.req(
        "1/p1 + 1/p2 = 1/p",
        &pr.inv[0] + &pr.inv[1],
        Relation::Eq,
        pr.inv_t.clone(),
    );
    h.finish(RuleId::MultHolderH, None)
}

fn mult_h(pr: &Params, family: Family) -> Result<Certificate, Attempt> {
    let variant = (family == Family::Bpp).then_some("Bpp");
    if pr.domain.is_bounded() {
        return Err(not_applicable(RuleId::MultH, variant, "whole-space rule"));
    }
    let mut h = Hyp::new();
    pr.p_gt_one(&mut h);
    pr.p_ordered(&mut h);
    pr.cond_i(&mut h);
    pr.cond_s_nonneg(&mut h);
    pr.cond_iii(&mut h, Relation::Ge);
    pr.cond_iv(&mut h, Relation::Gt);
    if family == Family::Bpp {
        h.note("diagonal Besov B^s_{p,p} variant of the Bessel-potential rule");
    }
    h.finish(RuleId::MultH, variant)
}

fn besov_zolesio(pr: &Params) -> Result<Certificate, Attempt> {
    if pr.domain.is_bounded() {
        return Err(not_applicable(RuleId::BesovZolesio, None, "whole-space rule"));
    }
    let mut h = Hyp::new();
    pr.p_gt_one(&mut h);
    h.req("q1 <= q (q1 = p1, q = p)", pr.p[0].clone(), Relation::Le, pr.pt.clone());
    h.req("q2 <= q (q2 = p2, q = p)", pr.p[1].clone(), Relation::Le, pr.pt.clone());
    h.req("0 <= s", pr.st.clone(), Relation::Ge, Rational::zero());
    pr.cond_i(&mut h);
    pr.cond_iii(&mut h, Relation::Ge);
    pr.cond_iv(&mut h, Relation::Gt);
    // s not in N: either non-integer, or s = 0
    if h.integrality("s", &pr.st) {
        h.req("s not in N (integer s must be 0)", pr.st.clone(), Relation::Le, Rational::zero());
    }
    h.note("restricted to q_i = p_i, q = p");
    h.finish(RuleId::BesovZolesio, None)
}

/// Decides whether pointwise multiplication `left x right -> target` is a
/// continuous bilinear map.
///
/// Rule order: W tries `Mult-Int` (both strictness variants), `Mult-Rn`,
/// `Mult-Bdd`, `Mult-Neg-I`, `Mult-Neg-II`, `Mult-Unified`; H tries
/// `Mult-Holder-H` then `Mult-H`; Bpp tries the Besov variant of `Mult-H` then
/// `Besov-Zolesio`. If none fires, the necessity test may disprove.
pub fn check_multiplication(q: &MultQuery) -> Result<Verdict, QueryError> {
    validate_same_domain(&[&q.left, &q.right, &q.target])?;
    for other in [&q.right, &q.target] {
        if other.family != q.left.family {
            return Err(QueryError::FamilyMismatch(
                q.left.family.to_string(),
                other.family.to_string(),
            ));
        }
    }

    let pr = Params::new(q);
    let family = q.left.family;
    let candidates: Vec<Box<dyn Fn() -> Result<Certificate, Attempt> + '_>> = match family {
        Family::W => vec![
            Box::new(|| mult_int(&pr, false)),
            Box::new(|| mult_int(&pr, true)),
            Box::new(|| mult_rn(&pr)),
            Box::new(|| mult_bdd(&pr)),
            Box::new(|| mult_neg_i(&pr)),
            Box::new(|| mult_neg_ii(&pr)),
            Box::new(|| mult_unified(&pr)),
        ],
        Family::H => vec![Box::new(|| holder_h(&pr)), Box::new(|| mult_h(&pr, Family::H))],
        Family::Bpp => vec![Box::new(|| mult_h(&pr, Family::Bpp)), Box::new(|| besov_zolesio(&pr))],
    };

    let mut tried = Vec::new();
    for rule in candidates {
        match rule() {
            Ok(cert) => {
                return Ok(Verdict {
                    status: Status::Proved,
                    certificate: Some(cert),
                    tried,
                })
            }
            Err(attempt) => tried.push(attempt),
        }
    }

    if family == Family::W {
        if let Some(cert) = necessity_disproof(q) {
            return Ok(Verdict {
                status: Status::Disproved,
                certificate: Some(cert),
                tried,
            });
        }
    }
    Ok(Verdict {
        status: Status::Undetermined,
        certificate: None,
        tried,
    })
}

use serde::{Deserialize, Serialize};

use crate::condition::Relation;
use crate::error::QueryError;
use crate::rational::Rational;
use crate::space::{Family, SpaceSpec};

use super::hyp::{not_applicable, Hyp};
use super::{validate_same_domain, Attempt, Certificate, EmbedQuery, RuleId, Status, Verdict};

/// Consequences of comparing `s p` with `n` for a W space with `s >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFacts {
    /// `s p > n`: embeds in `L^inf ∩ C^0` and is a Banach algebra.
    pub bounded_continuous_algebra: bool,
    /// `s p = n`: embeds in `L^q` for every `p <= q < inf`.
    pub critical: bool,
    /// `0 <= s p < n`: embeds in `L^q` for `p <= q <= np/(n - sp)`.
    pub lq_upper: Option<Rational>,
}

impl EmbeddingFacts {
    pub fn notes(&self, spec: &SpaceSpec) -> Vec<String> {
        let mut out = Vec::new();
        if self.bounded_continuous_algebra {
            out.push(format!(
                "Emb-II: s*p > n, so {spec} embeds in L^inf and C^0 and is a Banach algebra"
            ));
        }
        if self.critical {
            out.push(format!("Emb-II: s*p = n, so {spec} embeds in L^q for p <= q < inf"));
        }
        if let Some(upper) = &self.lq_upper {
            out.push(format!("Emb-II: s*p < n, so {spec} embeds in L^q for p <= q <= {upper}"));
        }
        out
    }
}

/// Facts for W-family specs with non-negative smoothness; `None` otherwise.
pub fn embedding_facts(spec: &SpaceSpec) -> Option<EmbeddingFacts> {
    if spec.family != Family::W || spec.s.is_negative() {
        return None;
    }
    let n = spec.domain.dim();
    let sp = &spec.s * &spec.p;
    Some(EmbeddingFacts {
        bounded_continuous_algebra: sp > n,
        critical: sp == n,
        lq_upper: (sp < n).then(|| &n * &spec.p / (&n - &sp)),
    })
}

fn sobolev_conditions(h: &mut Hyp, src: &SpaceSpec, dst: &SpaceSpec, ordered: bool) {
    let n = src.domain.dim();
    let one = Rational::one();
    h.req("range: 1 <= p", src.p.clone(), Relation::Ge, one.clone());
    if ordered {
        h.req("p <= q", src.p.clone(), Relation::Le, dst.p.clone());
    } else {
        h.req("range: 1 <= q", dst.p.clone(), Relation::Ge, one);
    }
    h.req("0 <= t", dst.s.clone(), Relation::Ge, Rational::zero());
    h.req("t <= s", dst.s.clone(), Relation::Le, src.s.clone());
    h.req(
        "s - n/p >= t - n/q",
        &src.s - &n / &src.p,
        Relation::Ge,
        &dst.s - &n / &dst.p,
    );
}

fn emb_i(src: &SpaceSpec, dst: &SpaceSpec) -> Result<Certificate, Attempt> {
    let mut h = Hyp::new();
    match src.family {
        Family::W => {}
        Family::H => {
            if src.domain.is_bounded() {
                return Err(not_applicable(RuleId::EmbI, None, "Bessel-potential embedding stated on the whole space only"));
            }
            h.req("range: p > 1", src.p.clone(), Relation::Gt, Rational::one());
        }
        Family::Bpp => return Err(not_applicable(RuleId::EmbI, None, "no embedding rule for Bpp")),
    }
    sobolev_conditions(&mut h, src, dst, true);
    h.finish(RuleId::EmbI, None)
}

fn emb_iii(src: &SpaceSpec, dst: &SpaceSpec) -> Result<Certificate, Attempt> {
    if src.family != Family::W {
        return Err(not_applicable(RuleId::EmbIII, None, "W family only"));
    }
    if !src.domain.is_bounded() {
        return Err(not_applicable(RuleId::EmbIII, None, "bounded-domain rule"));
    }
    let mut h = Hyp::new();
    sobolev_conditions(&mut h, src, dst, false);
    h.note("bounded domain: no ordering between p and q required");
    h.finish(RuleId::EmbIII, None)
}

/// Decides `source ↪ target`. Order: `Identity`, `Emb-I`, `Emb-III`.
pub fn check_embedding(q: &EmbedQuery) -> Result<Verdict, QueryError> {
    validate_same_domain(&[&q.source, &q.target])?;
    let facts = embedding_facts(&q.source)
        .map(|f| f.notes(&q.source))
        .unwrap_or_default();
    let proved = |mut cert: Certificate, tried| {
        cert.notes.extend(facts.iter().cloned());
        Ok(Verdict {
            status: Status::Proved,
            certificate: Some(cert),
            tried,
        })
    };

    if q.source == q.target {
        let cert = Certificate {
            rule: RuleId::Identity,
            variant: None,
            conditions: vec![],
            notes: vec![],
        };
        return proved(cert, vec![]);
    }

    let mut tried = Vec::new();
    if q.source.family != q.target.family {
        tried.push(not_applicable(RuleId::EmbI, None, "source and target families differ"));
        return Ok(Verdict {
            status: Status::Undetermined,
            certificate: None,
            tried,
        });
    }
    for rule in [emb_i, emb_iii] {
        match rule(&q.source, &q.target) {
            Ok(cert) => return proved(cert, tried),
            Err(attempt) => tried.push(attempt),
        }
    }
    Ok(Verdict {
        status: Status::Undetermined,
        certificate: None,
        tried,
    })
}

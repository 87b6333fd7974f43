//! Sufficient-condition rules for embeddings and pointwise multiplication.
//!
//! Each rule is a list of hypotheses evaluated exactly as [`AtomicCondition`]s.
//! A rule fires when all of its conditions hold; the first firing rule in the
//! documented order produces a [`Certificate`]. When nothing fires the engine
//! tries the single necessity result it knows, and otherwise answers
//! [`Status::Undetermined`]: the rules are sufficient, never necessary.

mod embedding;
mod hyp;
mod multiplication;
mod necessity;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::condition::AtomicCondition;
use crate::error::QueryError;
use crate::space::{validate_space, SpaceSpec, ValidatedSpace};

pub use embedding::{check_embedding, embedding_facts, EmbeddingFacts};
pub use multiplication::{check_multiplication, W_RULE_ORDER};
pub use necessity::necessity_disproof;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "Emb-I")]
    EmbI,
    #[serde(rename = "Emb-II")]
    EmbII,
    #[serde(rename = "Emb-III")]
    EmbIII,
    #[serde(rename = "Mult-H")]
    MultH,
    #[serde(rename = "Mult-Holder-H")]
    MultHolderH,
    #[serde(rename = "Mult-Int")]
    MultInt,
    #[serde(rename = "Mult-Rn")]
    MultRn,
    #[serde(rename = "Mult-Bdd")]
    MultBdd,
    #[serde(rename = "Mult-Neg-I")]
    MultNegI,
    #[serde(rename = "Mult-Neg-II")]
    MultNegII,
    #[serde(rename = "Mult-Unified")]
    MultUnified,
    #[serde(rename = "Besov-Zolesio")]
    BesovZolesio,
    #[serde(rename = "Disprove-Necessity")]
    DisproveNecessity,
    #[serde(rename = "Identity")]
    Identity,
    /// Derived by interpolating two proved bilinear estimates.
    #[serde(rename = "Bilinear-Interp")]
    BilinearInterp,
}

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::EmbI => "Emb-I",
            RuleId::EmbII => "Emb-II",
            RuleId::EmbIII => "Emb-III",
            RuleId::MultH => "Mult-H",
            RuleId::MultHolderH => "Mult-Holder-H",
            RuleId::MultInt => "Mult-Int",
            RuleId::MultRn => "Mult-Rn",
            RuleId::MultBdd => "Mult-Bdd",
            RuleId::MultNegI => "Mult-Neg-I",
            RuleId::MultNegII => "Mult-Neg-II",
            RuleId::MultUnified => "Mult-Unified",
            RuleId::BesovZolesio => "Besov-Zolesio",
            RuleId::DisproveNecessity => "Disprove-Necessity",
            RuleId::Identity => "Identity",
            RuleId::BilinearInterp => "Bilinear-Interp",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    pub rule: RuleId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub conditions: Vec<AtomicCondition>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Proved,
    Disproved,
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "Proved",
            Status::Disproved => "Disproved",
            Status::Undetermined => "Undetermined",
        })
    }
}

/// Why a rule did not fire.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    Condition(AtomicCondition),
    NotApplicable(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Condition(c) => write!(f, "{c}"),
            Failure::NotApplicable(why) => write!(f, "not applicable: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attempt {
    pub rule: RuleId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub failure: Failure,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub tried: Vec<Attempt>,
}

impl Verdict {
    pub fn rule(&self) -> Option<RuleId> {
        self.certificate.as_ref().map(|c| c.rule)
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultQuery {
    pub left: SpaceSpec,
    pub right: SpaceSpec,
    pub target: SpaceSpec,
}

impl MultQuery {
    pub fn new(left: SpaceSpec, right: SpaceSpec, target: SpaceSpec) -> Self {
        MultQuery { left, right, target }
    }

    pub fn swapped(&self) -> Self {
        MultQuery {
            left: self.right.clone(),
            right: self.left.clone(),
            target: self.target.clone(),
        }
    }
}

impl fmt::Display for MultQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {} -> {}", self.left, self.right, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbedQuery {
    pub source: SpaceSpec,
    pub target: SpaceSpec,
}

impl EmbedQuery {
    pub fn new(source: SpaceSpec, target: SpaceSpec) -> Self {
        EmbedQuery { source, target }
    }
}

impl fmt::Display for EmbedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

/// Re-evaluates every condition; true iff all recorded truth values are
/// reproduced. Does not consult the engine.
pub fn replay_certificate(cert: &Certificate) -> bool {
    cert.conditions.iter().all(AtomicCondition::replays)
}

pub(crate) fn validate_same_domain(specs: &[&SpaceSpec]) -> Result<Vec<ValidatedSpace>, QueryError> {
    let first = specs[0];
    for spec in &specs[1..] {
        if spec.domain != first.domain {
            return Err(QueryError::DomainMismatch(
                first.domain.to_string(),
                spec.domain.to_string(),
            ));
        }
    }
    specs
        .iter()
        .map(|s| validate_space(s).map_err(QueryError::from))
        .collect()
}

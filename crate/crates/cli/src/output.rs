use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sobmul_core::{
    AtomicCondition, Attempt, Certificate, EmbedQuery, Failure, MultQuery, RuleId, Status, Verdict,
};

pub const EXIT_PROVED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISPROVED: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;
/// An experiment ran but missed its acceptance criterion.
pub const EXIT_EXPERIMENT_FAILED: i32 = 4;

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Proved => EXIT_PROVED,
        Status::Disproved => EXIT_DISPROVED,
        Status::Undetermined => EXIT_UNDETERMINED,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QueryDoc {
    Mult(MultQuery),
    Embed(EmbedQuery),
}

/// Serialized verdict: the query, the outcome and its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub query: QueryDoc,
    pub status: Status,
    pub rule: Option<RuleId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub conditions: Vec<AtomicCondition>,
    pub notes: Vec<String>,
    #[serde(default)]
    pub tried: Vec<Attempt>,
}

impl VerdictDoc {
    pub fn new(query: QueryDoc, verdict: Verdict) -> Self {
        let (rule, variant, conditions, notes) = match verdict.certificate {
            Some(c) => (Some(c.rule), c.variant, c.conditions, c.notes),
            None => (None, None, Vec::new(), Vec::new()),
        };
        VerdictDoc {
            query,
            status: verdict.status,
            rule,
            variant,
            conditions,
            notes,
            tried: verdict.tried,
        }
    }

    pub fn certificate(&self) -> Option<Certificate> {
        self.rule.map(|rule| Certificate {
            rule,
            variant: self.variant.clone(),
            conditions: self.conditions.clone(),
            notes: self.notes.clone(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let query = match &self.query {
            QueryDoc::Mult(q) => q.to_string(),
            QueryDoc::Embed(q) => format!("{} -> {}", q.source, q.target),
        };
        writeln!(out, "query: {query}").unwrap();
        writeln!(out, "verdict: {}", self.status).unwrap();
        match self.rule {
            Some(rule) => writeln!(out, "rule: {rule}").unwrap(),
            None => writeln!(out, "rule: none").unwrap(),
        }
        if let Some(v) = &self.variant {
            writeln!(out, "variant: {v}").unwrap();
        }
        if !self.conditions.is_empty() {
            writeln!(out, "conditions:").unwrap();
            for c in &self.conditions {
                writeln!(out, "  {}", condition_line(c)).unwrap();
            }
        }
        if !self.notes.is_empty() {
            writeln!(out, "notes:").unwrap();
            for n in &self.notes {
                writeln!(out, "  - {n}").unwrap();
            }
        }
        if self.status != Status::Proved && !self.tried.is_empty() {
            writeln!(out, "tried:").unwrap();
            for a in &self.tried {
                let name = match &a.variant {
                    Some(v) => format!("{} ({v})", a.rule),
                    None => a.rule.to_string(),
                };
                let why = match &a.failure {
                    Failure::Condition(c) => format!("fails {}", condition_line(c)),
                    Failure::NotApplicable(why) => format!("not applicable: {why}"),
                };
                writeln!(out, "  {name}: {why}").unwrap();
            }
        }
        out
    }
}

/// `[true] label: lhs rel rhs`
pub fn condition_line(c: &AtomicCondition) -> String {
    format!("[{}] {}: {} {} {}", c.holds, c.label, c.lhs, c.relation.symbol(), c.rhs)
}

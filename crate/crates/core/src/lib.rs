//! Exact verdicts on multiplication and embedding between Sobolev-type
//! spaces, and a periodic spectral harness that checks them numerically.
//!
//! The crate has two halves:
//!
//! * a symbolic half ([`rational`], [`space`], [`condition`], [`rules`],
//!   [`interpolation`]) that decides `W^{s1,p1} x W^{s2,p2} -> W^{s,p}` and
//!   friends from exact rational exponents and emits replayable certificates;
//! * a numeric half ([`grid`], [`filter`], [`norms`], [`experiments`]) that
//!   evaluates Sobolev, Bessel, Besov and Triebel–Lizorkin norms of periodic
//!   grid functions and reproduces the counter-example growth law.

pub mod condition;
pub mod error;
pub mod experiments;
pub mod filter;
pub mod grid;
pub mod interpolation;
pub mod norms;
pub mod rational;
pub mod rules;
pub mod space;
mod spectral;

pub use condition::{AtomicCondition, Relation};
pub use error::{ExperimentError, GridError, InterpError, ParseRationalError, QueryError, SpaceError};
pub use rational::{q, Rational};
pub use rules::{
    check_embedding, check_multiplication, necessity_disproof, replay_certificate, Attempt,
    Certificate, EmbedQuery, Failure, MultQuery, RuleId, Status, Verdict,
};
pub use space::{conjugate_exponent, validate_space, DomainKind, DomainSpec, Family, SpaceSpec, ValidatedSpace};

//! A rule engine for the competition-winner example.
//!
//! Radio sources broadcast who won; each source is truthful, deceitful, or
//! truthful only on some days. From broadcasts and day facts the rules derive
//! `Win`, `¬Win` and disjunctions of `Win`. The checker validates listed
//! proofs step by step; the enumerator forward-chains from user data.

mod check;
mod enumerate;
mod formula;
mod rules;
mod world;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{Formula, KnowledgeSystem};

pub use check::{check_proof, CheckMode, CheckedProof, ImplicitStep, RuleApplication, StepViolation};
pub use enumerate::{enumerate_proofs, EnumerateOptions, EnumeratedProof, Enumeration};
pub use formula::{parse_kformula, KFormula};
pub use rules::Rule;
pub use world::{resolve_reliability, Reliability, Schedule, ScheduleDoc, TruthfulOn, WorldDocument, WorldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("cannot parse formula {0:?}")]
    UnparsableFormula(String),
    #[error("unknown {kind} {name}")]
    UnknownName { kind: &'static str, name: String },
    #[error("inconsistent day context: {0}")]
    InconsistentDayContext(String),
    #[error("invalid world: {0}")]
    InvalidWorld(String),
    #[error("malformed world document: {0}")]
    MalformedWorld(String),
    #[error("{0} is not user data")]
    NotUserData(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("contradiction: both Win and ¬Win derived for {}", .0.join(", "))]
    ContradictionDetected(Vec<String>),
}

/// Parses an opaque formula listing into kernel formulas.
pub fn parse_listing(world: &WorldSpec, formulas: &[Formula]) -> Result<Vec<KFormula>, KernelError> {
    formulas.iter().map(|f| parse_kformula(f.as_str(), world)).collect()
}

/// Checks every proof of `ks` in listing order against `world`, with the
/// system's goals as the admissible final formulas.
pub fn check_knowledge_system(
    world: &WorldSpec,
    ks: &KnowledgeSystem,
    mode: CheckMode,
) -> Result<Vec<CheckedProof>, KernelError> {
    let goals: BTreeSet<KFormula> = parse_listing(world, ks.goals())?.into_iter().collect();
    ks.proofs()
        .iter()
        .map(|p| {
            let listing = parse_listing(world, p.listing())?;
            Ok(check_proof(world, p.id(), &listing, &goals, mode))
        })
        .collect()
}

//! Formulas, proofs and knowledge systems.
//!
//! A knowledge system is a finite family of proofs over opaque formulas. Each
//! proof is a set of formulas holding exactly one goal; the proofs sharing a
//! goal form that goal's class. Everything here is immutable once built.

mod document;
mod fixture;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::proofset::ProofSet;

pub use document::{parse_knowledge_system, KsDocument, ProofEntry};
pub use fixture::{builtin_document, builtin_example};

/// A normalized statement. Identity is byte equality of the normalized text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Formula(String);

impl Formula {
    pub fn new(raw: &str) -> Result<Self, ModelError> {
        normalize_formula(raw)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Formula {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

const ALIASES: [(&str, &str); 3] = [("\\/", "∨"), ("!=", "≠"), ("~", "¬")];

/// Trims, collapses internal whitespace runs to one space, and rewrites the
/// ASCII aliases `!=`, `\/` and `~` to `≠`, `∨` and `¬`.
pub fn normalize_formula(raw: &str) -> Result<Formula, ModelError> {
    normalize_at(raw, "formula")
}

pub(crate) fn normalize_at(raw: &str, at: &str) -> Result<Formula, ModelError> {
    let mut text = raw.split_whitespace().collect::<Vec<_>>().join(" ");
    if text.is_empty() {
        return Err(ModelError::EmptyFormula { at: at.to_string() });
    }
    for (alias, canonical) in ALIASES {
        if text.contains(alias) {
            text = text.replace(alias, canonical);
        }
    }
    Ok(Formula(text))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("empty formula at {at}")]
    EmptyFormula { at: String },
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("invalid knowledge system: {}", summarize(.0))]
    Invalid(Vec<Violation>),
}

fn summarize(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A broken knowledge-system invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    #[error("no goals declared")]
    NoGoals,
    #[error("goal {goal} declared twice")]
    DuplicateGoal { goal: String },
    #[error("proof id {proof} used twice")]
    DuplicateProofId { proof: String },
    #[error("proof {proof} has no formulas")]
    EmptyProof { proof: String },
    #[error("proof {proof} lists {formula} twice")]
    DuplicateFormula { proof: String, formula: String },
    #[error("proof {proof} contains no goal")]
    NoGoalInProof { proof: String },
    #[error("proof {proof} contains several goals: {}", .goals.join(", "))]
    MultipleGoalsInProof { proof: String, goals: Vec<String> },
    #[error("proof {proof} has the same formulas as {duplicate_of}")]
    DuplicateProofBody { proof: String, duplicate_of: String },
    #[error("goal {goal} occurs in no proof")]
    UncoveredGoal { goal: String },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::NoGoals => "NoGoals",
            Violation::DuplicateGoal { .. } => "DuplicateGoal",
            Violation::DuplicateProofId { .. } => "DuplicateProofId",
            Violation::EmptyProof { .. } => "EmptyProof",
            Violation::DuplicateFormula { .. } => "DuplicateFormula",
            Violation::NoGoalInProof { .. } => "NoGoalInProof",
            Violation::MultipleGoalsInProof { .. } => "MultipleGoalsInProof",
            Violation::DuplicateProofBody { .. } => "DuplicateProofBody",
            Violation::UncoveredGoal { .. } => "UncoveredGoal",
        }
    }
}

/// A labelled set of formulas with its goal resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    id: String,
    listing: Vec<Formula>,
    formulas: BTreeSet<Formula>,
    goal: Formula,
}

impl Proof {
    pub fn id(&self) -> &str {
        &self.id
    }

    /// Formulas in the order they were listed.
    pub fn listing(&self) -> &[Formula] {
        &self.listing
    }

    pub fn formulas(&self) -> &BTreeSet<Formula> {
        &self.formulas
    }

    pub fn goal(&self) -> &Formula {
        &self.goal
    }

    pub fn len(&self) -> usize {
        self.listing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.listing.is_empty()
    }
}

/// Goals `G`, proofs `Q`, and the indices derived from them.
#[derive(Debug, Clone)]
pub struct KnowledgeSystem {
    goals: Vec<Formula>,
    proofs: Vec<Proof>,
    goal_of: Vec<usize>,
    classes: Vec<ProofSet>,
    occurrences: BTreeMap<Formula, ProofSet>,
}

impl PartialEq for KnowledgeSystem {
    fn eq(&self, other: &Self) -> bool {
        self.goals == other.goals && self.proofs == other.proofs
    }
}

impl Eq for KnowledgeSystem {}

impl KnowledgeSystem {
    /// Validates and indexes a system. All violations are collected before
    /// failing so a caller can report them together.
    pub fn new(goals: Vec<Formula>, proofs: Vec<(String, Vec<Formula>)>) -> Result<Self, ModelError> {
        let mut violations = Vec::new();

        if goals.is_empty() {
            violations.push(Violation::NoGoals);
        }
        let mut goal_index = BTreeMap::new();
        for goal in &goals {
            if goal_index.insert(goal.clone(), goal_index.len()).is_some() {
                violations.push(Violation::DuplicateGoal {
                    goal: goal.to_string(),
                });
            }
        }
        let goals: Vec<Formula> = {
            let mut seen = BTreeSet::new();
            goals.into_iter().filter(|g| seen.insert(g.clone())).collect()
        };
        let goal_index: BTreeMap<&Formula, usize> =
            goals.iter().enumerate().map(|(i, g)| (g, i)).collect();

        let mut ids = BTreeSet::new();
        let mut bodies: BTreeMap<BTreeSet<Formula>, String> = BTreeMap::new();
        let mut built = Vec::with_capacity(proofs.len());
        let mut goal_of = Vec::with_capacity(proofs.len());

        for (id, listing) in proofs {
            if !ids.insert(id.clone()) {
                violations.push(Violation::DuplicateProofId { proof: id.clone() });
            }
            if listing.is_empty() {
                violations.push(Violation::EmptyProof { proof: id });
                continue;
            }
            let mut formulas = BTreeSet::new();
            for f in &listing {
                if !formulas.insert(f.clone()) {
                    violations.push(Violation::DuplicateFormula {
                        proof: id.clone(),
                        formula: f.to_string(),
                    });
                }
            }
            let found: Vec<&Formula> = listing.iter().filter(|f| goal_index.contains_key(f)).collect();
            let goal = match found.as_slice() {
                [] => {
                    violations.push(Violation::NoGoalInProof { proof: id });
                    continue;
                }
                [single] => (*single).clone(),
                many => {
                    let mut names: Vec<String> = Vec::new();
                    for g in many {
                        if !names.iter().any(|n| n == g.as_str()) {
                            names.push(g.to_string());
                        }
                    }
                    if names.len() > 1 {
                        violations.push(Violation::MultipleGoalsInProof { proof: id, goals: names });
                        continue;
                    }
                    // the same goal listed twice, already reported above
                    many[0].clone()
                }
            };
            if let Some(first) = bodies.get(&formulas) {
                violations.push(Violation::DuplicateProofBody {
                    proof: id.clone(),
                    duplicate_of: first.clone(),
                });
            } else {
                bodies.insert(formulas.clone(), id.clone());
            }
            goal_of.push(goal_index[&goal]);
            built.push(Proof {
                id,
                listing: {
                    let mut seen = BTreeSet::new();
                    listing.into_iter().filter(|f| seen.insert(f.clone())).collect()
                },
                formulas,
                goal,
            });
        }

        for (g, goal) in goals.iter().enumerate() {
            if !goal_of.contains(&g) {
                violations.push(Violation::UncoveredGoal {
                    goal: goal.to_string(),
                });
            }
        }

        if !violations.is_empty() {
            return Err(ModelError::Invalid(violations));
        }

        let n = built.len();
        let mut classes = vec![ProofSet::empty(n); goals.len()];
        let mut occurrences: BTreeMap<Formula, ProofSet> = BTreeMap::new();
        for (p, proof) in built.iter().enumerate() {
            classes[goal_of[p]].insert(p);
            for f in &proof.formulas {
                occurrences
                    .entry(f.clone())
                    .or_insert_with(|| ProofSet::empty(n))
                    .insert(p);
            }
        }

        Ok(Self {
            goals,
            proofs: built,
            goal_of,
            classes,
            occurrences,
        })
    }

    pub fn goals(&self) -> &[Formula] {
        &self.goals
    }

    /// `M`, the number of goals.
    pub fn goal_count(&self) -> usize {
        self.goals.len()
    }

    pub fn proofs(&self) -> &[Proof] {
        &self.proofs
    }

    pub fn proof(&self, id: &str) -> Option<&Proof> {
        self.proofs.iter().find(|p| p.id == id)
    }

    pub fn is_goal(&self, formula: &Formula) -> bool {
        self.goal_index(formula).is_some()
    }

    pub fn goal_index(&self, formula: &Formula) -> Option<usize> {
        self.goals.iter().position(|g| g == formula)
    }

    /// Number of proofs per goal, in goal order.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ProofSet::count).collect()
    }

    /// Ids of the proofs whose goal is the goal at `goal` (index into `goals()`).
    pub fn class_ids(&self, goal: usize) -> Vec<&str> {
        self.classes[goal].iter().map(|p| self.proofs[p].id()).collect()
    }

    pub(crate) fn goal_of(&self, proof: usize) -> usize {
        self.goal_of[proof]
    }

    pub(crate) fn class(&self, goal: usize) -> &ProofSet {
        &self.classes[goal]
    }

    /// Proofs containing every formula in `subset`; unknown formulas give the empty set.
    pub(crate) fn support_set<'a, I>(&self, subset: I) -> ProofSet
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut set = ProofSet::full(self.proofs.len());
        for f in subset {
            match self.occurrences.get(f) {
                Some(occ) => set.intersect_with(occ),
                None => return ProofSet::empty(self.proofs.len()),
            }
        }
        set
    }

    pub(crate) fn occurrences(&self, formula: &Formula) -> ProofSet {
        self.occurrences
            .get(formula)
            .cloned()
            .unwrap_or_else(|| ProofSet::empty(self.proofs.len()))
    }
}

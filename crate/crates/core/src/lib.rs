//! Entropic weight of proofs in a finite knowledge system.
//!
//! A knowledge system is a set of proofs, each a set of formulas containing
//! exactly one goal. Under the maximum-uncertainty measure (goals equally
//! likely, a goal's proofs equally likely) the entropic weight of a formula
//! set says how undecided the goal remains once those formulas are known.
//! The [`profile`] module tracks how fast that uncertainty collapses as more of
//! a proof is revealed, and [`kernel`] is a small rule engine that produces and
//! checks the proofs of the bundled competition example.

pub mod kernel;
pub mod measure;
pub mod model;
pub mod profile;
mod proofset;
pub mod weight;

/// Exact probability values.
pub type Rational = num_rational::Ratio<i128>;

pub use measure::{goal_class, proof_measure, shannon_entropy, support, MeasureError, ProbabilityMeasure, Support};
pub use model::{
    builtin_example, normalize_formula, parse_knowledge_system, Formula, KnowledgeSystem, ModelError, Proof,
    Violation,
};
pub use profile::{
    average_speed, average_weight, delta, delta_oracle, profile, zeta, Delta, ProfileError, SearchOptions,
    WeightProfile,
};
pub use weight::{is_certain, weight, weight_defform, WeightResult};

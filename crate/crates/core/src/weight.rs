//! Entropic weight `D(S)` of a formula set.
//!
//! With `p_φ = Pr(E(S) ∩ Q_φ)` and `P = Pr(E(S))`,
//!
//! ```text
//! D(S) = -Σ_φ p_φ·log₂ p_φ + P·log₂ P          (evaluated form)
//!      = -Σ_φ p_φ·log₂ (p_φ / P)               (ratio form, cross-check only)
//! ```
//!
//! The first form never divides, so an empty support needs no special case.

use serde::Serialize;

use crate::measure::{plogp, ProbabilityMeasure};
use crate::model::{Formula, KnowledgeSystem};
use crate::proofset::ProofSet;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightResult {
    /// Bits.
    pub value: f64,
    #[serde(skip)]
    pub per_goal_terms: Vec<(Formula, Rational)>,
    pub support_size: usize,
    /// The support is nonempty and lies inside one goal class.
    pub certain: bool,
    /// `E(S)` is empty; `value` is then 0 by convention and says nothing about certainty.
    pub empty_support: bool,
}

pub fn weight<'a, I>(ks: &KnowledgeSystem, measure: &ProbabilityMeasure, subset: I) -> WeightResult
where
    I: IntoIterator<Item = &'a Formula>,
{
    let set = ks.support_set(subset);
    let numerators = measure.class_numerators(ks, &set);
    let den = measure.denominator();
    WeightResult {
        value: weight_of_numerators(&numerators, den),
        per_goal_terms: ks
            .goals()
            .iter()
            .zip(&numerators)
            .map(|(g, n)| (g.clone(), Rational::new(*n, den)))
            .collect(),
        support_size: set.count(),
        certain: classes_touched(&numerators) == 1,
        empty_support: set.is_empty(),
    }
}

/// Ratio form of the weight. Terms with zero mass are skipped.
pub fn weight_defform<'a, I>(ks: &KnowledgeSystem, measure: &ProbabilityMeasure, subset: I) -> f64
where
    I: IntoIterator<Item = &'a Formula>,
{
    let set = ks.support_set(subset);
    let den = measure.denominator() as f64;
    let numerators = measure.class_numerators(ks, &set);
    let total = numerators.iter().sum::<i128>() as f64 / den;
    -numerators
        .iter()
        .filter(|n| **n > 0)
        .map(|n| {
            let p = *n as f64 / den;
            p * (p / total).log2()
        })
        .sum::<f64>()
}

/// Structural certainty: `E(S)` is nonempty and contained in a single goal class.
pub fn is_certain<'a, I>(ks: &KnowledgeSystem, measure: &ProbabilityMeasure, subset: I) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let _ = measure;
    support_is_certain(ks, &ks.support_set(subset))
}

pub(crate) fn support_is_certain(ks: &KnowledgeSystem, set: &ProofSet) -> bool {
    !set.is_empty() && (0..ks.goal_count()).any(|g| set.is_subset(ks.class(g)))
}

pub(crate) fn weight_of_support(ks: &KnowledgeSystem, measure: &ProbabilityMeasure, set: &ProofSet) -> f64 {
    weight_of_numerators(&measure.class_numerators(ks, set), measure.denominator())
}

fn weight_of_numerators(numerators: &[i128], den: i128) -> f64 {
    let den = den as f64;
    let spread: f64 = numerators.iter().map(|n| plogp(*n as f64 / den)).sum();
    let total = numerators.iter().sum::<i128>() as f64 / den;
    plogp(total) - spread
}

fn classes_touched(numerators: &[i128]) -> usize {
    numerators.iter().filter(|n| **n > 0).count()
}

//! The maximum-uncertainty measure on proofs and the supports `E(S)`.
//!
//! Every goal gets mass `1/M`, split evenly among the proofs of its class, so
//! a proof `Q` with goal `φ` weighs `1/(M·|Q_φ|)`. Masses are held as integer
//! numerators over one common denominator, which keeps every sum exact.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::{Formula, KnowledgeSystem};
use crate::proofset::ProofSet;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("{0} is not a goal of the knowledge system")]
    UnknownGoal(String),
    #[error("not a probability distribution: {0}")]
    NotADistribution(String),
    #[error("common denominator of the proof masses overflows 128 bits")]
    DenominatorOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityMeasure {
    denominator: i128,
    numerators: Vec<i128>,
    goal_count: usize,
}

impl ProbabilityMeasure {
    pub fn new(ks: &KnowledgeSystem) -> Result<Self, MeasureError> {
        let m = ks.goal_count() as i128;
        let sizes: Vec<i128> = ks.class_sizes().into_iter().map(|s| s as i128).collect();
        let mut denominator: i128 = 1;
        for &q in &sizes {
            let cell = m.checked_mul(q).ok_or(MeasureError::DenominatorOverflow)?;
            denominator = (denominator / denominator.gcd(&cell))
                .checked_mul(cell)
                .ok_or(MeasureError::DenominatorOverflow)?;
        }
        let numerators = (0..ks.proofs().len())
            .map(|p| denominator / (m * sizes[ks.goal_of(p)]))
            .collect();
        Ok(Self {
            denominator,
            numerators,
            goal_count: ks.goal_count(),
        })
    }

    /// Mass of the proof at `index` (position in `KnowledgeSystem::proofs`).
    pub fn mass(&self, index: usize) -> Rational {
        Rational::new(self.numerators[index], self.denominator)
    }

    /// Mass of the proof labelled `id`, if present.
    pub fn mass_of(&self, ks: &KnowledgeSystem, id: &str) -> Option<Rational> {
        ks.proofs().iter().position(|p| p.id() == id).map(|i| self.mass(i))
    }

    /// `1/M`, the mass of every goal class.
    pub fn goal_mass(&self) -> Rational {
        Rational::new(1, self.goal_count as i128)
    }

    pub fn total(&self) -> Rational {
        Rational::new(self.numerators.iter().sum(), self.denominator)
    }

    pub fn per_proof<'a>(&self, ks: &'a KnowledgeSystem) -> Vec<(&'a str, Rational)> {
        ks.proofs()
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id(), self.mass(i)))
            .collect()
    }

    pub(crate) fn denominator(&self) -> i128 {
        self.denominator
    }

    /// Unnormalized per-goal masses of `set`, in goal order.
    pub(crate) fn class_numerators(&self, ks: &KnowledgeSystem, set: &ProofSet) -> Vec<i128> {
        let mut out = vec![0i128; ks.goal_count()];
        for p in set.iter() {
            out[ks.goal_of(p)] += self.numerators[p];
        }
        out
    }
}

/// Builds the maximum-uncertainty measure for `ks`.
pub fn proof_measure(ks: &KnowledgeSystem) -> Result<ProbabilityMeasure, MeasureError> {
    ProbabilityMeasure::new(ks)
}

/// Ids of the proofs whose goal is `goal`.
pub fn goal_class<'a>(ks: &'a KnowledgeSystem, goal: &Formula) -> Result<Vec<&'a str>, MeasureError> {
    let g = ks
        .goal_index(goal)
        .ok_or_else(|| MeasureError::UnknownGoal(goal.to_string()))?;
    Ok(ks.class_ids(g))
}

/// `E(S)` together with its exact mass split by goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub proofs: Vec<String>,
    pub per_goal_mass: Vec<(Formula, Rational)>,
    pub total_mass: Rational,
}

impl Support {
    pub fn is_empty(&self) -> bool {
        self.proofs.is_empty()
    }
}

pub fn support<'a, I>(ks: &KnowledgeSystem, measure: &ProbabilityMeasure, subset: I) -> Support
where
    I: IntoIterator<Item = &'a Formula>,
{
    let set = ks.support_set(subset);
    let numerators = measure.class_numerators(ks, &set);
    let den = measure.denominator();
    Support {
        proofs: set.iter().map(|p| ks.proofs()[p].id().to_string()).collect(),
        per_goal_mass: ks
            .goals()
            .iter()
            .zip(&numerators)
            .map(|(g, n)| (g.clone(), Rational::new(*n, den)))
            .collect(),
        total_mass: Rational::new(numerators.iter().sum(), den),
    }
}

/// Shannon entropy in bits, `0·log 0 = 0`. Entries must be nonnegative and sum
/// to exactly one.
pub fn shannon_entropy(dist: &[Rational]) -> Result<f64, MeasureError> {
    if let Some(p) = dist.iter().find(|p| **p < Rational::zero()) {
        return Err(MeasureError::NotADistribution(format!("negative entry {p}")));
    }
    let sum: Rational = dist.iter().fold(Rational::zero(), |acc, p| acc + p);
    if !sum.is_one() {
        return Err(MeasureError::NotADistribution(format!("entries sum to {sum}")));
    }
    Ok(-dist.iter().map(|p| plogp(to_f64(p))).sum::<f64>())
}

pub(crate) fn plogp(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

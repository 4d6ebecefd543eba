//! Convergence of a proof to certainty.
//!
//! `δ(Q,k)` is the largest entropic weight over the `k`-element subsets of a
//! proof `Q`: what an adversary revealing `k` formulas can leave undecided.
//! `ζ(Q)` is the first `k` where every `k`-subset already pins the goal.
//!
//! [`delta`] searches the subset lattice depth first in lexicographic order
//! and prunes a partial subset once its own weight cannot beat the incumbent.
//! That bound is sound because the weight never grows as a set grows.
//! [`delta_oracle`] enumerates every subset with no pruning.

use serde::Serialize;
use thiserror::Error;

use crate::measure::ProbabilityMeasure;
use crate::model::{Formula, KnowledgeSystem, Proof};
use crate::proofset::ProofSet;
use crate::weight::{support_is_certain, weight, weight_of_support};

/// Proofs longer than this are refused unless `SearchOptions::allow_large` is set.
pub const MAX_PROOF_LEN: usize = 30;

// A branch is cut only when its bound sits this far below the incumbent, so
// rounding in the bound can never hide a strictly better completion.
const PRUNE_MARGIN: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("subset size {k} out of range for proof {proof} of length {len}")]
    SizeOutOfRange { proof: String, k: usize, len: usize },
    #[error("proof {proof} has {len} formulas; the limit is {MAX_PROOF_LEN} without --allow-large")]
    ProofTooLarge { proof: String, len: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub allow_large: bool,
}

/// A maximal weight together with one subset attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Delta {
    pub value: f64,
    /// Sorted by formula text; the lexicographically smallest maximizer.
    pub witness: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    pub proof_id: String,
    /// `δ(Q,k)` for `k = 0..=|Q|`.
    pub deltas: Vec<f64>,
    pub witnesses: Vec<Vec<Formula>>,
    pub zeta: usize,
    pub average_weight: f64,
    pub average_speed: f64,
    /// `ζ = 1`: there is no step to average over and the speed is reported as 0.
    pub speed_by_convention: bool,
}

pub fn delta(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    proof: &Proof,
    k: usize,
) -> Result<Delta, ProfileError> {
    delta_with(ks, measure, proof, k, SearchOptions::default())
}

pub fn delta_with(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    proof: &Proof,
    k: usize,
    opts: SearchOptions,
) -> Result<Delta, ProfileError> {
    check_size(proof, k, opts)?;
    let items = sorted_items(ks, proof);
    let mut search = BranchAndBound {
        ks,
        measure,
        items: &items,
        k,
        chosen: Vec::with_capacity(k),
        best: None,
    };
    search.descend(0, ProofSet::full(ks.proofs().len()));
    let (value, picks) = search.best.ok_or_else(|| {
        ProfileError::InternalInvariantViolation(format!("no {k}-subset visited in {}", proof.id()))
    })?;
    Ok(Delta {
        value,
        witness: picks.into_iter().map(|i| items[i].0.clone()).collect(),
    })
}

struct BranchAndBound<'a> {
    ks: &'a KnowledgeSystem,
    measure: &'a ProbabilityMeasure,
    items: &'a [(Formula, ProofSet)],
    k: usize,
    chosen: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
}

impl BranchAndBound<'_> {
    fn descend(&mut self, start: usize, support: ProofSet) {
        if self.chosen.len() == self.k {
            let value = weight_of_support(self.ks, self.measure, &support);
            // strict: an earlier (lexicographically smaller) subset keeps a tie
            if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                self.best = Some((value, self.chosen.clone()));
            }
            return;
        }
        if let Some((best, _)) = &self.best {
            // every completion of a certain set weighs exactly 0
            if *best >= 0.0 && support_is_certain(self.ks, &support) {
                return;
            }
            let bound = weight_of_support(self.ks, self.measure, &support);
            if bound + PRUNE_MARGIN <= *best {
                return;
            }
        }
        let need = self.k - self.chosen.len();
        for i in start..=self.items.len() - need {
            self.chosen.push(i);
            let next = support.intersection(&self.items[i].1);
            self.descend(i + 1, next);
            self.chosen.pop();
        }
    }
}

/// Exhaustive `δ(Q,k)`: evaluates [`weight`] on every `k`-subset.
pub fn delta_oracle(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    proof: &Proof,
    k: usize,
) -> Result<Delta, ProfileError> {
    check_size(proof, k, SearchOptions { allow_large: true })?;
    let formulas: Vec<Formula> = proof.formulas().iter().cloned().collect();
    let mut best: Option<Delta> = None;
    for picks in Combinations::new(formulas.len(), k) {
        let subset: Vec<Formula> = picks.iter().map(|&i| formulas[i].clone()).collect();
        let value = weight(ks, measure, &subset).value;
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(Delta { value, witness: subset });
        }
    }
    best.ok_or_else(|| ProfileError::InternalInvariantViolation(format!("no {k}-subset of {}", proof.id())))
}

/// Smallest `k` such that every `k`-subset of the proof is structurally certain.
pub fn zeta(ks: &KnowledgeSystem, measure: &ProbabilityMeasure, proof: &Proof) -> Result<usize, ProfileError> {
    zeta_with(ks, measure, proof, SearchOptions::default())
}

pub fn zeta_with(
    ks: &KnowledgeSystem,
    _measure: &ProbabilityMeasure,
    proof: &Proof,
    opts: SearchOptions,
) -> Result<usize, ProfileError> {
    check_size(proof, 0, opts)?;
    let items = sorted_items(ks, proof);
    let n = items.len();
    for k in 1..=n {
        let all_certain = Combinations::new(n, k).all(|picks| {
            let mut set = ProofSet::full(ks.proofs().len());
            for i in picks {
                set.intersect_with(&items[i].1);
            }
            support_is_certain(ks, &set)
        });
        if all_certain {
            return Ok(k);
        }
    }
    Err(ProfileError::InternalInvariantViolation(format!(
        "proof {} never reaches certainty; is it part of this knowledge system?",
        proof.id()
    )))
}

/// `(1/|Q|)·Σ_{i=1}^{|Q|} δ(Q,i)`.
pub fn average_weight(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    proof: &Proof,
) -> Result<f64, ProfileError> {
    Ok(profile(ks, measure, proof)?.average_weight)
}

/// Mean per-step drop of `δ` from `k = 1` to `k = ζ`; 0 when `ζ = 1`.
pub fn average_speed(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    proof: &Proof,
) -> Result<f64, ProfileError> {
    Ok(profile(ks, measure, proof)?.average_speed)
}

pub fn profile(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    proof: &Proof,
) -> Result<WeightProfile, ProfileError> {
    profile_with(ks, measure, proof, SearchOptions::default())
}

pub fn profile_with(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    proof: &Proof,
    opts: SearchOptions,
) -> Result<WeightProfile, ProfileError> {
    let mut deltas = Vec::with_capacity(proof.len() + 1);
    let mut witnesses = Vec::with_capacity(proof.len() + 1);
    for k in 0..=proof.len() {
        let d = delta_with(ks, measure, proof, k, opts)?;
        deltas.push(d.value);
        witnesses.push(d.witness);
    }
    let zeta = zeta_with(ks, measure, proof, opts)?;
    if deltas[zeta..].iter().any(|d| *d != 0.0) || (zeta > 1 && deltas[zeta - 1] <= 0.0) {
        return Err(ProfileError::InternalInvariantViolation(format!(
            "weights of {} disagree with certainty threshold {zeta}",
            proof.id()
        )));
    }
    let (average_speed, speed_by_convention) = mean_speed(&deltas, zeta);
    Ok(WeightProfile {
        proof_id: proof.id().to_string(),
        average_weight: mean_weight(&deltas),
        average_speed,
        speed_by_convention,
        deltas,
        witnesses,
        zeta,
    })
}

fn mean_weight(deltas: &[f64]) -> f64 {
    let n = deltas.len() - 1;
    deltas[1..].iter().sum::<f64>() / n as f64
}

fn mean_speed(deltas: &[f64], zeta: usize) -> (f64, bool) {
    if zeta <= 1 {
        return (0.0, true);
    }
    let drops: f64 = (1..zeta).map(|i| deltas[i] - deltas[i + 1]).sum();
    (drops / (zeta - 1) as f64, false)
}

fn check_size(proof: &Proof, k: usize, opts: SearchOptions) -> Result<(), ProfileError> {
    if !opts.allow_large && proof.len() > MAX_PROOF_LEN {
        return Err(ProfileError::ProofTooLarge {
            proof: proof.id().to_string(),
            len: proof.len(),
        });
    }
    if k > proof.len() {
        return Err(ProfileError::SizeOutOfRange {
            proof: proof.id().to_string(),
            k,
            len: proof.len(),
        });
    }
    Ok(())
}

fn sorted_items(ks: &KnowledgeSystem, proof: &Proof) -> Vec<(Formula, ProofSet)> {
    // BTreeSet iteration is already in text order
    proof
        .formulas()
        .iter()
        .map(|f| (f.clone(), ks.occurrences(f)))
        .collect()
}

/// Index combinations of `k` out of `n` in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

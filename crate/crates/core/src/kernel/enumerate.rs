//! Bounded forward chaining from user data.
//!
//! Every derivable formula keeps the justification whose full listing (its
//! premises' listings plus itself) is shortest; ties keep the earliest one
//! found. Chaining runs to a fixpoint, ignoring derivations whose listing would
//! need more than `max_steps` rule applications.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::rules::{derivations, Rule};
use super::world::candidate_days;
use super::{KFormula, KernelError, WorldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub max_steps: usize,
    /// Also emit proofs ending in a disjunction of goal participants.
    pub include_disjunctive: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            max_steps: 8,
            include_disjunctive: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedProof {
    pub goal: KFormula,
    /// User data first, then derived formulas in dependency order; ends with `goal`.
    pub listing: Vec<KFormula>,
    pub derived_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub proofs: Vec<EnumeratedProof>,
    /// Participants for which both `Win` and `¬Win` were derived.
    pub contradictions: Vec<String>,
}

impl Enumeration {
    pub fn ensure_consistent(&self) -> Result<(), KernelError> {
        if self.contradictions.is_empty() {
            Ok(())
        } else {
            Err(KernelError::ContradictionDetected(self.contradictions.clone()))
        }
    }
}

pub fn enumerate_proofs<P>(
    world: &WorldSpec,
    user_data: &[KFormula],
    goal_pred: P,
    opts: EnumerateOptions,
) -> Result<Enumeration, KernelError>
where
    P: Fn(&str) -> bool,
{
    if opts.max_steps == 0 {
        return Err(KernelError::InvalidArgument("max_steps must be at least 1".into()));
    }
    let mut known: Vec<KFormula> = Vec::new();
    for f in user_data {
        if !f.is_user_data() {
            return Err(KernelError::NotUserData(f.to_string()));
        }
        if !known.contains(f) {
            known.push(f.clone());
        }
    }
    candidate_days(world, &known)?;
    let data_len = known.len();

    let mut chain = Chain {
        data_len,
        justification: vec![None; data_len],
    };
    // every pass either adds a formula or shortens a listing; the cap only
    // guards against a pathological world
    let cap = 64 * (1 + world.participants().len()).pow(2) * (1 + data_len);
    for _ in 0..cap {
        if !chain.extend(world, &mut known, opts.max_steps) {
            break;
        }
    }

    let contradictions: Vec<String> = world
        .participants()
        .iter()
        .filter(|p| known.contains(&KFormula::Win((*p).clone())) && known.contains(&KFormula::NotWin((*p).clone())))
        .cloned()
        .collect();

    let mut proofs = Vec::new();
    for (idx, formula) in known.iter().enumerate() {
        let wanted = match formula {
            KFormula::Win(p) => goal_pred(p),
            KFormula::WinDisj(ps) => opts.include_disjunctive && ps.iter().all(|p| goal_pred(p)),
            _ => false,
        };
        if wanted {
            proofs.push(chain.listing(&known, idx));
        }
    }
    proofs.sort_by(|a, b| a.goal.cmp(&b.goal));
    Ok(Enumeration { proofs, contradictions })
}

struct Chain {
    data_len: usize,
    justification: Vec<Option<(Rule, Vec<usize>)>>,
}

impl Chain {
    /// One pass over all rule instances. Returns whether anything changed.
    fn extend(&mut self, world: &WorldSpec, known: &mut Vec<KFormula>, max_steps: usize) -> bool {
        let mut closures = BTreeMap::new();
        let mut changed = false;
        for d in derivations(world, known) {
            let mut closure = BTreeSet::new();
            for &p in &d.premises {
                closure.extend(self.closure(p, &mut closures));
            }
            let derived = closure.iter().filter(|&&i| i >= self.data_len).count() + 1;
            if derived > max_steps {
                continue;
            }
            match known.iter().position(|k| k == &d.conclusion) {
                None => {
                    known.push(d.conclusion);
                    self.justification.push(Some((d.rule, d.premises)));
                    changed = true;
                }
                Some(idx) if idx >= self.data_len && !closure.contains(&idx) => {
                    let current = self.closure(idx, &mut closures).len();
                    if closure.len() + 1 < current {
                        self.justification[idx] = Some((d.rule, d.premises));
                        // cached closures of dependents are stale now
                        return true;
                    }
                }
                Some(_) => {}
            }
        }
        changed
    }

    /// `idx` together with everything its justification rests on.
    fn closure(&self, idx: usize, memo: &mut BTreeMap<usize, BTreeSet<usize>>) -> BTreeSet<usize> {
        if let Some(c) = memo.get(&idx) {
            return c.clone();
        }
        let mut out = BTreeSet::from([idx]);
        if let Some((_, premises)) = &self.justification[idx] {
            for &p in premises {
                out.extend(self.closure(p, memo));
            }
        }
        memo.insert(idx, out.clone());
        out
    }

    fn depth(&self, idx: usize) -> usize {
        match &self.justification[idx] {
            None => 0,
            Some((_, premises)) => 1 + premises.iter().map(|&p| self.depth(p)).max().unwrap_or(0),
        }
    }

    fn listing(&self, known: &[KFormula], goal: usize) -> EnumeratedProof {
        let mut indices: Vec<usize> = self.closure(goal, &mut BTreeMap::new()).into_iter().collect();
        indices.sort_by_key(|&i| (self.depth(i), i));
        EnumeratedProof {
            goal: known[goal].clone(),
            derived_steps: indices.iter().filter(|&&i| i >= self.data_len).count(),
            listing: indices.into_iter().map(|i| known[i].clone()).collect(),
        }
    }
}

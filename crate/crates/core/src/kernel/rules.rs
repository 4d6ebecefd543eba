use std::collections::BTreeSet;

use serde::Serialize;

use super::world::{candidate_days, resolve_reliability, Reliability, Schedule};
use super::{KFormula, WorldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    /// A broadcast or day fact supplied by the user.
    UserData,
    /// `Brd(R,a)`, `R` truthful ⊢ `Win(a)`.
    TruthfulBroadcast,
    /// `Brd(R,a)`, `R` deceitful ⊢ `¬Win(a)`.
    DeceitfulBroadcast,
    /// `¬Win(a)` ⊢ disjunction of everybody else (somebody always wins).
    ExistenceDisj,
    /// `Win(X)` disjunction, `¬Win(b)` with `b ∈ X` ⊢ disjunction over `X \ {b}`.
    DisjElim,
    /// `Win(a)` ⊢ `¬Win(b)` for `b ≠ a`.
    Uniqueness,
}

/// One rule instance over a list of known formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Derivation {
    pub conclusion: KFormula,
    pub rule: Rule,
    /// Indices into the known list, ascending.
    pub premises: Vec<usize>,
}

/// Every single-rule conclusion from `known`, grouped by the formula that
/// triggers the rule and in the order of `known`. With contradictory day
/// facts no broadcast is interpreted.
pub(crate) fn derivations(world: &WorldSpec, known: &[KFormula]) -> Vec<Derivation> {
    let day_facts: Vec<usize> = (0..known.len()).filter(|&i| known[i].is_day_fact()).collect();
    let context: Vec<KFormula> = day_facts.iter().map(|&i| known[i].clone()).collect();
    let days_ok = candidate_days(world, &context).is_ok();

    let mut out = Vec::new();
    for (i, formula) in known.iter().enumerate() {
        match formula {
            KFormula::Brd { source, participant } if days_ok => {
                let Ok(reliability) = resolve_reliability(world, source, &context) else {
                    continue;
                };
                let (rule, conclusion) = match reliability {
                    Reliability::Truthful => (Rule::TruthfulBroadcast, KFormula::Win(participant.clone())),
                    Reliability::Deceitful => (Rule::DeceitfulBroadcast, KFormula::NotWin(participant.clone())),
                    Reliability::Unknown => continue,
                };
                let mut premises = vec![i];
                if matches!(world.schedule(source), Some(Schedule::TruthfulOn(_))) {
                    premises.extend(&day_facts);
                }
                premises.sort_unstable();
                out.push(Derivation {
                    conclusion,
                    rule,
                    premises,
                });
            }
            KFormula::Win(winner) => {
                for other in world.participants().iter().filter(|p| *p != winner) {
                    out.push(Derivation {
                        conclusion: KFormula::NotWin(other.clone()),
                        rule: Rule::Uniqueness,
                        premises: vec![i],
                    });
                }
            }
            KFormula::NotWin(loser) => {
                let rest: BTreeSet<String> = world.participants().iter().filter(|p| *p != loser).cloned().collect();
                if let Some(conclusion) = KFormula::win_among(rest) {
                    out.push(Derivation {
                        conclusion,
                        rule: Rule::ExistenceDisj,
                        premises: vec![i],
                    });
                }
            }
            KFormula::WinDisj(options) => {
                for (j, other) in known.iter().enumerate() {
                    let KFormula::NotWin(loser) = other else { continue };
                    if !options.contains(loser) {
                        continue;
                    }
                    let mut rest = options.clone();
                    rest.remove(loser);
                    if let Some(conclusion) = KFormula::win_among(rest) {
                        let mut premises = vec![i, j];
                        premises.sort_unstable();
                        out.push(Derivation {
                            conclusion,
                            rule: Rule::DisjElim,
                            premises,
                        });
                    }
                }
            }
            _ => {}
        }
    }
    out
}

use std::collections::BTreeSet;

use serde::Serialize;

use super::rules::{derivations, Derivation, Rule};
use super::world::{candidate_days, resolve_reliability, Reliability};
use super::{KFormula, WorldSpec};

/// `Lenient` lets a listed step rest on one unlisted intermediate formula that
/// itself follows from earlier steps by a single rule. `Strict` demands every
/// formula be listed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    #[default]
    Lenient,
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleApplication {
    pub rule: Rule,
    /// Indices of earlier steps.
    pub premises: Vec<usize>,
    /// The elided intermediate of a composite step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implicit: Option<ImplicitStep>,
    pub conclusion: KFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicitStep {
    pub rule: Rule,
    pub formula: KFormula,
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepViolation {
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedProof {
    pub proof_id: String,
    /// One entry per listed formula; `None` where no justification was found.
    pub steps: Vec<Option<RuleApplication>>,
    pub valid: bool,
    pub violations: Vec<StepViolation>,
}

pub fn check_proof(
    world: &WorldSpec,
    proof_id: &str,
    proof: &[KFormula],
    goal_forms: &BTreeSet<KFormula>,
    mode: CheckMode,
) -> CheckedProof {
    let mut steps = Vec::with_capacity(proof.len());
    let mut violations = Vec::new();
    let mut flag = |step: usize, reason: String| violations.push(StepViolation { step, reason });

    if proof.is_empty() {
        flag(0, "empty proof".into());
    }

    for (i, formula) in proof.iter().enumerate() {
        let known = &proof[..i];
        if formula.is_user_data() {
            if formula.is_day_fact() {
                let context: Vec<KFormula> = proof[..=i].iter().filter(|f| f.is_day_fact()).cloned().collect();
                if let Err(e) = candidate_days(world, &context) {
                    flag(i, e.to_string());
                }
            }
            steps.push(Some(RuleApplication {
                rule: Rule::UserData,
                premises: Vec::new(),
                implicit: None,
                conclusion: formula.clone(),
            }));
            continue;
        }
        if i == 0 {
            flag(0, format!("{formula} is not user data; a proof starts with user data"));
            steps.push(None);
            continue;
        }
        if let Some(j) = known.iter().position(|k| k == formula) {
            flag(i, format!("{formula} repeats step {j}"));
            steps.push(None);
            continue;
        }

        let direct = derivations(world, known);
        let found = direct
            .iter()
            .find(|d| &d.conclusion == formula)
            .map(|d| RuleApplication {
                rule: d.rule,
                premises: d.premises.clone(),
                implicit: None,
                conclusion: formula.clone(),
            })
            .or_else(|| match mode {
                CheckMode::Lenient => composite(world, known, formula, &direct),
                CheckMode::Strict => None,
            });
        match found {
            Some(app) => steps.push(Some(app)),
            None => {
                flag(i, explain(world, known, formula));
                steps.push(None);
            }
        }
    }

    if let Some(last) = proof.last() {
        if !goal_forms.contains(last) {
            flag(proof.len() - 1, format!("final formula {last} is not a goal"));
        }
    }

    violations.sort_by_key(|v| v.step);
    CheckedProof {
        proof_id: proof_id.to_string(),
        valid: violations.is_empty(),
        steps,
        violations,
    }
}

fn composite(world: &WorldSpec, known: &[KFormula], target: &KFormula, direct: &[Derivation]) -> Option<RuleApplication> {
    let hidden = known.len();
    let mut tried = BTreeSet::new();
    for step in direct {
        if known.contains(&step.conclusion) || !tried.insert(&step.conclusion) {
            continue;
        }
        let mut extended = known.to_vec();
        extended.push(step.conclusion.clone());
        let hit = derivations(world, &extended)
            .into_iter()
            .find(|d| &d.conclusion == target && d.premises.contains(&hidden));
        if let Some(d) = hit {
            return Some(RuleApplication {
                rule: d.rule,
                premises: d.premises.into_iter().filter(|p| *p != hidden).collect(),
                implicit: Some(ImplicitStep {
                    rule: step.rule,
                    formula: step.conclusion.clone(),
                    premises: step.premises.clone(),
                }),
                conclusion: target.clone(),
            });
        }
    }
    None
}

fn explain(world: &WorldSpec, known: &[KFormula], target: &KFormula) -> String {
    let subject = match target {
        KFormula::Win(p) | KFormula::NotWin(p) => Some(p),
        _ => None,
    };
    let context: Vec<KFormula> = known.iter().filter(|f| f.is_day_fact()).cloned().collect();
    if let Some(who) = subject {
        for f in known {
            if let KFormula::Brd { source, participant } = f {
                if participant == who && matches!(resolve_reliability(world, source, &context), Ok(Reliability::Unknown)) {
                    return format!("cannot derive {target}: {source} reliability unknown without a deciding day fact");
                }
            }
        }
    }
    format!("no rule derives {target} from earlier formulas")
}

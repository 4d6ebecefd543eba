#![allow(dead_code)]

use entweight::{Formula, KnowledgeSystem};
use proptest::prelude::*;

/// Builds a system from `(goal, body mask)` pairs over a pool of plain
/// formulas `f0..`. Each proof is its goal plus the masked pool formulas;
/// repeated bodies are dropped, keeping the first.
pub fn build(goals: usize, pool: usize, proofs: &[(usize, u32)]) -> KnowledgeSystem {
    let goal_names: Vec<Formula> = (0..goals).map(|g| Formula::new(&format!("goal{g}")).unwrap()).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut listed = Vec::new();
    for (n, &(g, mask)) in proofs.iter().enumerate() {
        if !seen.insert((g, mask)) {
            continue;
        }
        let mut body: Vec<Formula> = (0..pool)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| Formula::new(&format!("f{i}")).unwrap())
            .collect();
        body.push(goal_names[g].clone());
        listed.push((format!("P{n}"), body));
    }
    KnowledgeSystem::new(goal_names, listed).expect("generated system is valid")
}

/// Random valid systems: 1..=4 goals, up to `max_pool` shared formulas,
/// 1..=3 proofs per goal.
pub fn arb_system(max_pool: usize) -> impl Strategy<Value = KnowledgeSystem> {
    (1usize..=4, 1usize..=max_pool).prop_flat_map(|(goals, pool)| {
        let per_goal = prop::collection::vec(prop::collection::vec(0u32..(1 << pool), 1..=3), goals);
        per_goal.prop_map(move |bodies| {
            let pairs: Vec<(usize, u32)> = bodies
                .iter()
                .enumerate()
                .flat_map(|(g, ms)| ms.iter().map(move |m| (g, *m)))
                .collect();
            build(goals, pool, &pairs)
        })
    })
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Random systems come from a fixed ChaCha seed, so every run sees the same
//! inputs. Reference values below were recomputed with 50-digit arithmetic,
//! independently of this crate.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};

use entweight::kernel::{
    check_knowledge_system, check_proof, enumerate_proofs, parse_kformula, parse_listing, CheckMode,
    EnumerateOptions, KFormula, WorldSpec,
};
use entweight::{
    builtin_example, delta, delta_oracle, is_certain, proof_measure, profile, shannon_entropy, weight,
    weight_defform, zeta, Formula, KnowledgeSystem, Rational,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_e17a;

/// `(label, subset, reference D, rounded value quoted for the example)`.
const WORKED: [(&str, &[&str], f64, f64); 4] = [
    ("{Day=Fri}", &["Day=Fri"], 0.306_098_611, 0.31),
    ("S1", &["Brd(R2,Dok)"], 1.210_732_995, 1.21),
    ("S2", &["Day≠Fri", "Brd(R2,Dok)"], 0.539_416_997, 0.54),
    ("S3", &["Day≠Fri", "Brd(R2,Dok)", "Win(Bok)∨Win(Fok)"], 0.360_568_055, 0.36),
];

/// Six-decimal regression literals that came with the criterion list. They
/// disagree with the recomputed values in the fifth or sixth decimal.
const QUOTED_REGRESSION: [f64; 4] = [0.306091, 1.210744, 0.539408, 0.360565];

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    Outcome { pass: ok, detail }
}

fn f(s: &str) -> Formula {
    Formula::new(s).unwrap()
}

fn fs(items: &[&str]) -> Vec<Formula> {
    items.iter().map(|s| f(s)).collect()
}

// ------------------------------------------------------------ random systems

/// 1..=4 goals over a pool of `pool` shared formulas; 1..=3 proofs per goal,
/// each its goal plus a random pool subset. Repeated bodies are dropped.
fn random_system(rng: &mut ChaCha8Rng, max_pool: usize) -> KnowledgeSystem {
    let goals = rng.gen_range(1..=4);
    let pool = rng.gen_range(1..=max_pool);
    let goal_names: Vec<Formula> = (0..goals).map(|g| f(&format!("goal{g}"))).collect();
    let mut seen = BTreeSet::new();
    let mut proofs = Vec::new();
    for (g, goal) in goal_names.iter().enumerate() {
        for _ in 0..rng.gen_range(1..=3) {
            let mask: u32 = rng.gen_range(0..(1u32 << pool));
            if !seen.insert((g, mask)) {
                continue;
            }
            let mut body: Vec<Formula> = (0..pool).filter(|i| mask >> i & 1 == 1).map(|i| f(&format!("f{i}"))).collect();
            body.push(goal.clone());
            proofs.push((format!("P{}", proofs.len()), body));
        }
    }
    KnowledgeSystem::new(goal_names, proofs).expect("generated system is valid")
}

fn random_subset<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> Vec<T> {
    items.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

fn all_formulas(ks: &KnowledgeSystem) -> Vec<Formula> {
    let set: BTreeSet<Formula> = ks.proofs().iter().flat_map(|p| p.formulas().iter().cloned()).collect();
    set.into_iter().collect()
}

fn proof_formulas(ks: &KnowledgeSystem, i: usize) -> Vec<Formula> {
    ks.proofs()[i].formulas().iter().cloned().collect()
}

// ------------------------------------------------------------ criteria

fn c1_measure() -> Outcome {
    let ks = builtin_example();
    let m = proof_measure(&ks).unwrap();
    let mut bad = Vec::new();
    for (id, mass) in m.per_proof(&ks) {
        let want = if id == "QF1" { Rational::new(1, 3) } else { Rational::new(1, 9) };
        if mass != want {
            bad.push(format!("{id}={mass}"));
        }
    }
    if bad.is_empty() && m.total() == Rational::from_integer(1) {
        pass("Pr(QB*)=Pr(QD*)=1/9, Pr(QF1)=1/3, total 1, exact")
    } else {
        fail(format!("unexpected masses: {}", bad.join(", ")))
    }
}

fn c2_worked_weights() -> Outcome {
    let ks = builtin_example();
    let m = proof_measure(&ks).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut literal_notes = Vec::new();
    for ((label, subset, reference, rounded), quoted) in WORKED.iter().zip(QUOTED_REGRESSION) {
        let d = weight(&ks, &m, &fs(subset)).value;
        let coarse = (d - rounded).abs() <= 0.005;
        let fine = (d - reference).abs() <= 1e-5;
        ok &= coarse && fine;
        parts.push(format!("D({label})={d:.6}"));
        if (d - quoted).abs() > 1e-5 {
            literal_notes.push(format!("{label}: quoted {quoted} is {:.1e} off", (d - quoted).abs()));
        }
    }
    let mut detail = format!("{} (±0.005 of rounded, 1e-5 of recomputed reference)", parts.join(" "));
    if !literal_notes.is_empty() {
        detail.push_str(&format!("; note {}", literal_notes.join(", ")));
    }
    verdict(ok, detail)
}

fn c3_empty_set(systems: &[KnowledgeSystem]) -> Outcome {
    let ks = builtin_example();
    let m = proof_measure(&ks).unwrap();
    let fixture = weight(&ks, &m, &[]).value;
    let mut worst: f64 = (fixture - 3f64.log2()).abs();
    for s in systems {
        let m = proof_measure(s).unwrap();
        let d = weight(s, &m, &[]).value;
        worst = worst.max((d - (s.goal_count() as f64).log2()).abs());
    }
    verdict(
        worst <= 1e-9,
        format!("D(∅)={fixture:.9} on fixture; max |D(∅)-log₂M| over {} systems {worst:.1e}", systems.len()),
    )
}

fn c4_certainty(systems: &[KnowledgeSystem], rng: &mut ChaCha8Rng) -> Outcome {
    let mut certain = 0usize;
    for s in systems {
        let m = proof_measure(s).unwrap();
        let universe = all_formulas(s);
        let mut candidates: Vec<Vec<Formula>> = (0..s.proofs().len()).map(|i| proof_formulas(s, i)).collect();
        for i in 0..s.proofs().len() {
            for _ in 0..8 {
                candidates.push(random_subset(rng, &proof_formulas(s, i)));
            }
        }
        for _ in 0..8 {
            candidates.push(random_subset(rng, &universe));
        }
        for subset in candidates {
            if is_certain(s, &m, &subset) {
                certain += 1;
                let d = weight(s, &m, &subset).value;
                if d != 0.0 {
                    return fail(format!("certain subset with D={d:e}"));
                }
            }
        }
    }
    pass(format!("{certain} certain subsets across {} systems all weigh exactly 0", systems.len()))
}

fn c5_monotone_in_s(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let s = random_system(rng, 10);
        let m = proof_measure(&s).unwrap();
        let q = rng.gen_range(0..s.proofs().len());
        let larger = random_subset(rng, &proof_formulas(&s, q));
        let smaller = random_subset(rng, &larger);
        let gap = weight(&s, &m, &larger).value - weight(&s, &m, &smaller).value;
        worst = worst.max(gap);
    }
    verdict(worst <= 1e-9, format!("1000 pairs S⊆S′, max D(S′)-D(S) = {worst:.1e}"))
}

fn c6_forms(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 1000 {
        let s = random_system(rng, 10);
        let m = proof_measure(&s).unwrap();
        let universe = all_formulas(&s);
        for _ in 0..10 {
            let subset = random_subset(rng, &universe);
            worst = worst.max((weight(&s, &m, &subset).value - weight_defform(&s, &m, &subset)).abs());
            done += 1;
        }
    }
    verdict(worst <= 1e-9, format!("{done} subsets, max |evaluated-ratio form| = {worst:.1e}"))
}

fn c7_profiles() -> Outcome {
    let ks = builtin_example();
    let m = proof_measure(&ks).unwrap();
    let qb3 = profile(&ks, &m, ks.proof("QB3").unwrap()).unwrap();
    let want = [3f64.log2(), 1.2107, 0.5394, 0.3606, 0.0, 0.0, 0.0];
    let close = qb3.deltas.len() == want.len() && qb3.deltas.iter().zip(want).all(|(d, w)| (d - w).abs() <= 1e-3);
    let qb1 = ks.proof("QB1").unwrap();
    let d1 = delta(&ks, &m, qb1, 1).unwrap().value;
    let d2 = delta(&ks, &m, qb1, 2).unwrap().value;
    let shown: Vec<String> = qb3.deltas.iter().map(|d| format!("{d:.4}")).collect();
    verdict(
        close && (d1 - 0.3061).abs() <= 1e-3 && d2 == 0.0,
        format!("δ(QB3)=[{}]; δ(QB1,1)={d1:.4}, δ(QB1,2)={d2}", shown.join(", ")),
    )
}

fn c8_zeta() -> Outcome {
    let ks = builtin_example();
    let m = proof_measure(&ks).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, want) in [("QB3", 4), ("QB1", 2), ("QD1", 1)] {
        let proof = ks.proof(id).unwrap();
        let structural = zeta(&ks, &m, proof).unwrap();
        // exhaustive: smallest k from which every δ vanishes
        let exhaustive = (0..=proof.len())
            .find(|&k| (k..=proof.len()).all(|j| delta_oracle(&ks, &m, proof, j).unwrap().value == 0.0))
            .unwrap();
        ok &= structural == want && exhaustive == want;
        parts.push(format!("ζ({id})={structural}"));
    }
    verdict(ok, format!("{} (structural and exhaustive agree)", parts.join(", ")))
}

fn c9_oracle(systems: &[KnowledgeSystem]) -> Outcome {
    let mut checks = 0;
    for s in systems {
        let m = proof_measure(s).unwrap();
        for p in s.proofs() {
            assert!(p.len() <= 12);
            for k in 0..=p.len() {
                let fast = delta(s, &m, p, k).unwrap();
                let slow = delta_oracle(s, &m, p, k).unwrap();
                if fast.value != slow.value {
                    return fail(format!("{} k={k}: pruned {} vs oracle {}", p.id(), fast.value, slow.value));
                }
                checks += 1;
            }
        }
    }
    pass(format!("{checks} δ values over {} systems match exactly", systems.len()))
}

fn c10_delta_monotone(groups: &[&[KnowledgeSystem]]) -> Outcome {
    let mut profiles = 0;
    let mut worst = f64::NEG_INFINITY;
    for systems in groups {
        for s in systems.iter() {
            let m = proof_measure(s).unwrap();
            for p in s.proofs() {
                let prof = profile(s, &m, p).unwrap();
                for w in prof.deltas.windows(2) {
                    worst = worst.max(w[1] - w[0]);
                }
                profiles += 1;
            }
        }
    }
    verdict(worst <= 1e-9, format!("{profiles} profiles, max δ(k+1)-δ(k) = {worst:.1e}"))
}

fn c11_entropy() -> Outcome {
    let r = |n, d| Rational::new(n, d);
    let a = shannon_entropy(&[r(1, 4), r(1, 4), r(1, 2)]).unwrap();
    let b = shannon_entropy(&[r(1, 8), r(7, 16), r(7, 16)]).unwrap();
    let c = shannon_entropy(&[r(1, 3), r(1, 3), r(1, 3)]).unwrap();
    verdict(
        (a - 1.5).abs() <= 1e-9 && (b - 1.4186).abs() <= 1e-3 && (c - 3f64.log2()).abs() <= 1e-9,
        format!("H(1/4,1/4,1/2)={a:.9}, H(1/8,7/16,7/16)={b:.6}, H(uniform 3)={c:.9}"),
    )
}

/// One premise deleted per fixture proof, with whether the rest still proves the goal.
const MUTANTS: [(&str, &str, bool); 7] = [
    ("QB1", "Day=Fri", false),
    ("QB2", "Day≠Fri", true),
    ("QB3", "Brd(R3,Fok)", false),
    ("QD1", "Brd(R1,Dok)", false),
    ("QD2", "Brd(R3,Fok)", true),
    ("QD3", "Brd(R1,Dok)", true),
    ("QF1", "Day≠Fri", false),
];

fn goal_forms(world: &WorldSpec) -> BTreeSet<KFormula> {
    world.participants().iter().map(|p| KFormula::Win(p.clone())).collect()
}

fn c12_inference() -> Outcome {
    let world = WorldSpec::competition();
    let ks = builtin_example();
    let checked = check_knowledge_system(&world, &ks, CheckMode::Lenient).unwrap();
    let invalid: Vec<&str> = checked.iter().filter(|c| !c.valid).map(|c| c.proof_id.as_str()).collect();
    if !invalid.is_empty() {
        return fail(format!("fixture proofs rejected: {}", invalid.join(", ")));
    }
    let mut wrong = Vec::new();
    for (id, deleted, stays_valid) in MUTANTS {
        let kept: Vec<Formula> = ks.proof(id).unwrap().listing().iter().filter(|f| f.as_str() != deleted).cloned().collect();
        let listing = parse_listing(&world, &kept).unwrap();
        let c = check_proof(&world, id, &listing, &goal_forms(&world), CheckMode::Lenient);
        if c.valid != stays_valid {
            wrong.push(format!("{id}-{deleted}"));
        }
    }
    verdict(
        wrong.is_empty(),
        if wrong.is_empty() {
            "7 fixture proofs valid; 7 deletion mutants behave as predicted".to_string()
        } else {
            format!("mispredicted mutants: {}", wrong.join(", "))
        },
    )
}

fn c13_enumerator(rng: &mut ChaCha8Rng) -> Outcome {
    let world = WorldSpec::competition();
    let goals = goal_forms(&world);
    let parse = |items: &[&str]| -> Vec<KFormula> { items.iter().map(|s| parse_kformula(s, &world).unwrap()).collect() };

    let qb1 = enumerate_proofs(&world, &parse(&["Day=Fri", "Brd(R2,Bok)"]), |_| true, EnumerateOptions::default()).unwrap();
    let found: BTreeSet<String> = qb1.proofs.iter().flat_map(|p| p.listing.iter().map(ToString::to_string)).collect();
    let body: BTreeSet<String> = builtin_example().proof("QB1").unwrap().formulas().iter().map(|f| f.to_string()).collect();
    if qb1.proofs.len() != 1 || found != body {
        return fail(format!("{{Day=Fri, Brd(R2,Bok)}} enumerated {found:?}"));
    }

    // random user data drawn from all day facts and broadcasts
    let mut pool = parse(&["Day=Fri", "Day≠Fri"]);
    for (source, _) in world.sources() {
        for p in world.participants() {
            pool.push(KFormula::Brd {
                source: source.to_string(),
                participant: p.clone(),
            });
        }
    }
    let mut rechecked = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let mut data: Vec<KFormula> = pool.choose_multiple(rng, n).cloned().collect();
        if data.contains(&pool[0]) && data.contains(&pool[1]) {
            data.retain(|d| d != &pool[1]);
        }
        let e = enumerate_proofs(&world, &data, |_| true, EnumerateOptions::default()).unwrap();
        if !e.contradictions.is_empty() {
            continue;
        }
        for p in &e.proofs {
            let c = check_proof(&world, "E", &p.listing, &goals, CheckMode::Strict);
            if !c.valid {
                let text: Vec<String> = p.listing.iter().map(ToString::to_string).collect();
                return fail(format!("strict re-check rejects {text:?}: {:?}", c.violations));
            }
            rechecked += 1;
        }
    }
    pass(format!("QB1 body recovered; {rechecked} enumerated proofs re-check in strict mode"))
}

fn c14_demo() -> Outcome {
    let run = || Command::new(env!("CARGO_BIN_EXE_entweight")).arg("demo").output().expect("binary runs");
    let a = run();
    let b = run();
    let golden = include_bytes!("golden/demo.json");
    let ok = a.status.success() && a.stdout == b.stdout && a.stdout == golden;
    verdict(
        ok,
        format!(
            "two runs identical: {}, golden match: {} ({} bytes)",
            a.stdout == b.stdout,
            a.stdout == golden,
            a.stdout.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let wide: Vec<KnowledgeSystem> = (0..200).map(|_| random_system(&mut rng, 10)).collect();
    let small: Vec<KnowledgeSystem> = (0..100).map(|_| random_system(&mut rng, 11)).collect();

    let results: Vec<(&str, Outcome)> = vec![
        ("fixture measure", c1_measure()),
        ("worked weights", c2_worked_weights()),
        ("D1 maximal uncertainty", c3_empty_set(&wide)),
        ("D2 maximal certainty", c4_certainty(&wide, &mut rng)),
        ("D3 non-increasing in S", c5_monotone_in_s(&mut rng)),
        ("form equivalence", c6_forms(&mut rng)),
        ("fixture profiles", c7_profiles()),
        ("certainty thresholds", c8_zeta()),
        ("oracle equivalence", c9_oracle(&small)),
        ("δ non-increasing in k", c10_delta_monotone(&[&wide, &small])),
        ("Shannon baseline", c11_entropy()),
        ("inference checker", c12_inference()),
        ("enumerator round-trip", c13_enumerator(&mut rng)),
        ("CLI determinism", c14_demo()),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
        failed += usize::from(!outcome.pass);
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

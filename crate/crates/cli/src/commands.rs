use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use entweight::kernel::{check_knowledge_system, CheckMode, CheckedProof, KernelError, WorldSpec};
use entweight::model::builtin_document;
use entweight::profile::profile_with;
use entweight::{
    builtin_example, normalize_formula, parse_knowledge_system, proof_measure, shannon_entropy, support, weight,
    Formula, KnowledgeSystem, MeasureError, ModelError, ProbabilityMeasure, ProfileError, Rational, SearchOptions,
    WeightProfile,
};
use serde::Serialize;
use thiserror::Error;

use crate::report::{Bits, Exact, InputDigest, Report, Tabular};

pub const BUILTIN_SOURCE: &str = "builtin:competition";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// Unreadable input: exit 3.
    #[error("{0}")]
    Parse(String),
    /// Input read fine but violates the model: exit 2.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Io { .. } | CliError::Parse(_) => 3,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Invalid(_) => CliError::Domain(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::UnparsableFormula(_) | KernelError::UnknownName { .. } | KernelError::MalformedWorld(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// A rendered report and the exit code it implies.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub table: String,
    pub code: u8,
}

fn emit<T: Serialize + Tabular>(report: Report<T>, code: u8) -> Output {
    Output {
        json: report.to_json(),
        table: report.to_table(),
        code,
    }
}

fn read(path: &Path) -> Result<(String, InputDigest), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let digest = InputDigest::of(path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((text, digest))
}

fn load_system(path: &Path) -> Result<(KnowledgeSystem, InputDigest), CliError> {
    let (text, digest) = read(path)?;
    Ok((parse_knowledge_system(&text)?, digest))
}

fn builtin_digest() -> InputDigest {
    let text = serde_json::to_string_pretty(&builtin_document()).expect("fixture serializes");
    InputDigest::of(BUILTIN_SOURCE, text.as_bytes())
}

/// Splits on commas outside parentheses, so `Brd(R2,Dok)` stays whole.
pub fn split_subset(raw: &str) -> Vec<&str> {
    if raw.trim().is_empty() {
        return Vec::new();
    }
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in raw.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&raw[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&raw[start..]);
    parts
}

fn parse_subset<'a>(items: impl IntoIterator<Item = &'a str>, origin: &str) -> Result<Vec<Formula>, CliError> {
    items
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            normalize_formula(s).map_err(|_| CliError::Parse(format!("empty formula at {origin}[{i}]")))
        })
        .collect()
}

fn texts(formulas: &[Formula]) -> Vec<String> {
    formulas.iter().map(|f| f.as_str().to_string()).collect()
}

// ---------------------------------------------------------------- weight

#[derive(Debug, Serialize)]
pub struct GoalMass {
    pub goal: String,
    pub mass: Exact,
}

#[derive(Debug, Serialize)]
pub struct WeightReport {
    pub subset: Vec<String>,
    pub weight: Bits,
    pub certain: bool,
    pub empty_support: bool,
    pub support: Vec<String>,
    pub support_mass: Exact,
    pub per_goal_mass: Vec<GoalMass>,
}

impl WeightReport {
    fn compute(ks: &KnowledgeSystem, measure: &ProbabilityMeasure, subset: &[Formula]) -> Self {
        let w = weight(ks, measure, subset);
        let s = support(ks, measure, subset);
        WeightReport {
            subset: texts(subset),
            weight: Bits(w.value),
            certain: w.certain,
            empty_support: w.empty_support,
            support: s.proofs,
            support_mass: Exact(s.total_mass),
            per_goal_mass: s
                .per_goal_mass
                .into_iter()
                .map(|(g, m)| GoalMass {
                    goal: g.as_str().to_string(),
                    mass: Exact(m),
                })
                .collect(),
        }
    }

    fn line(&self) -> String {
        let note = if self.empty_support {
            " (empty support)"
        } else if self.certain {
            " (certain)"
        } else {
            ""
        };
        format!(
            "D({{{}}}) = {}{}  support [{}] mass {}",
            self.subset.join(", "),
            self.weight.fixed(),
            note,
            self.support.join(" "),
            self.support_mass
        )
    }
}

impl Tabular for WeightReport {
    fn table(&self) -> String {
        let mut out = self.line();
        out.push('\n');
        for g in &self.per_goal_mass {
            let _ = writeln!(out, "  {:<20} {}", g.goal, g.mass);
        }
        out
    }
}

pub fn weight_cmd(command: String, path: &Path, subset: SubsetSource<'_>) -> Result<Output, CliError> {
    let (ks, digest) = load_system(path)?;
    let mut inputs = vec![digest];
    let formulas = match subset {
        SubsetSource::Inline(raw) => parse_subset(split_subset(raw), "--subset")?,
        SubsetSource::File(file) => {
            let (text, d) = read(file)?;
            inputs.push(d);
            parse_subset(text.lines().filter(|l| !l.trim().is_empty()), "--subset-file")?
        }
    };
    let measure = proof_measure(&ks)?;
    let report = WeightReport::compute(&ks, &measure, &formulas);
    Ok(emit(Report::new(command, inputs, report), 0))
}

pub enum SubsetSource<'a> {
    Inline(&'a str),
    File(&'a Path),
}

// ---------------------------------------------------------------- profile

#[derive(Debug, Serialize)]
pub struct ProfileReport {
    pub proof: String,
    pub size: usize,
    pub deltas: Vec<Bits>,
    pub witnesses: Vec<Vec<String>>,
    pub zeta: usize,
    pub average_weight: Bits,
    pub average_speed: Bits,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub speed_note: Option<&'static str>,
}

impl From<WeightProfile> for ProfileReport {
    fn from(p: WeightProfile) -> Self {
        ProfileReport {
            size: p.deltas.len() - 1,
            proof: p.proof_id,
            deltas: p.deltas.into_iter().map(Bits).collect(),
            witnesses: p.witnesses.iter().map(|w| texts(w)).collect(),
            zeta: p.zeta,
            average_weight: Bits(p.average_weight),
            average_speed: Bits(p.average_speed),
            speed_note: p
                .speed_by_convention
                .then_some("certainty threshold is 1; no steps to average, speed reported as 0"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Profiles {
    pub profiles: Vec<ProfileReport>,
}

fn profile_table(profiles: &[ProfileReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<8} {:>4} {:>5} {:>10} {:>10}  deltas", "proof", "|Q|", "zeta", "avg_weight", "avg_speed");
    for p in profiles {
        let deltas: Vec<String> = p.deltas.iter().map(|d| d.fixed()).collect();
        let _ = writeln!(
            out,
            "{:<8} {:>4} {:>5} {:>10} {:>10}{} [{}]",
            p.proof,
            p.size,
            p.zeta,
            p.average_weight.fixed(),
            p.average_speed.fixed(),
            if p.speed_note.is_some() { "*" } else { " " },
            deltas.join(", ")
        );
    }
    if profiles.iter().any(|p| p.speed_note.is_some()) {
        out.push_str("* certainty threshold is 1; speed reported as 0 by convention\n");
    }
    out
}

impl Tabular for Profiles {
    fn table(&self) -> String {
        profile_table(&self.profiles)
    }
}

fn profiles_of(
    ks: &KnowledgeSystem,
    measure: &ProbabilityMeasure,
    ids: &[&str],
    opts: SearchOptions,
) -> Result<Vec<ProfileReport>, CliError> {
    ids.iter()
        .map(|id| {
            let proof = ks
                .proof(id)
                .ok_or_else(|| CliError::Domain(format!("unknown proof id {id}")))?;
            Ok(profile_with(ks, measure, proof, opts)?.into())
        })
        .collect()
}

pub fn profile_cmd(command: String, path: &Path, proof: Option<&str>, allow_large: bool) -> Result<Output, CliError> {
    let (ks, digest) = load_system(path)?;
    let measure = proof_measure(&ks)?;
    let ids: Vec<&str> = match proof {
        Some(id) => vec![id],
        None => ks.proofs().iter().map(|p| p.id()).collect(),
    };
    let profiles = profiles_of(&ks, &measure, &ids, SearchOptions { allow_large })?;
    Ok(emit(Report::new(command, vec![digest], Profiles { profiles }), 0))
}

// ---------------------------------------------------------------- validate

#[derive(Debug, Serialize)]
pub struct ClassSummary {
    pub goal: String,
    pub proofs: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ViolationReport {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub summary: String,
    pub classes: Vec<ClassSummary>,
    pub violations: Vec<ViolationReport>,
}

impl Tabular for Validation {
    fn table(&self) -> String {
        let mut out = format!("{}: {}\n", if self.valid { "valid" } else { "invalid" }, self.summary);
        for c in &self.classes {
            let _ = writeln!(out, "  {:<20} {}", c.goal, c.proofs.join(" "));
        }
        for v in &self.violations {
            let _ = writeln!(out, "  {}: {}", v.kind, v.message);
        }
        out
    }
}

pub fn validate_cmd(command: String, path: &Path) -> Result<Output, CliError> {
    let (text, digest) = read(path)?;
    let result = match parse_knowledge_system(&text) {
        Ok(ks) => Validation {
            valid: true,
            summary: format!("M={}, proofs={}", ks.goal_count(), ks.proofs().len()),
            classes: ks
                .goals()
                .iter()
                .enumerate()
                .map(|(i, g)| ClassSummary {
                    goal: g.as_str().to_string(),
                    proofs: ks.class_ids(i).into_iter().map(String::from).collect(),
                })
                .collect(),
            violations: Vec::new(),
        },
        Err(ModelError::Invalid(violations)) => Validation {
            valid: false,
            summary: format!("{} violation(s)", violations.len()),
            classes: Vec::new(),
            violations: violations
                .iter()
                .map(|v| ViolationReport {
                    kind: v.kind(),
                    message: v.to_string(),
                })
                .collect(),
        },
        Err(e) => return Err(e.into()),
    };
    let code = if result.valid { 0 } else { 2 };
    Ok(emit(Report::new(command, vec![digest], result), code))
}

// ---------------------------------------------------------------- entropy

#[derive(Debug, Serialize)]
pub struct EntropyReport {
    pub distribution: Vec<Exact>,
    pub entropy: Bits,
}

impl Tabular for EntropyReport {
    fn table(&self) -> String {
        let dist: Vec<String> = self.distribution.iter().map(ToString::to_string).collect();
        format!("H({}) = {} bits\n", dist.join(", "), self.entropy.fixed())
    }
}

pub fn entropy_cmd(command: String, dist: &str) -> Result<Output, CliError> {
    let values: Vec<Rational> = dist
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Domain(format!("not a rational number: {:?}", s.trim())))
        })
        .collect::<Result<_, _>>()?;
    let h = shannon_entropy(&values)?;
    let report = EntropyReport {
        distribution: values.into_iter().map(Exact).collect(),
        entropy: Bits(h),
    };
    Ok(emit(Report::new(command, Vec::new(), report), 0))
}

// ---------------------------------------------------------------- check

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub mode: CheckMode,
    pub all_valid: bool,
    pub proofs: Vec<CheckedProofReport>,
}

#[derive(Debug, Serialize)]
pub struct CheckedProofReport {
    #[serde(flatten)]
    pub checked: CheckedProof,
    pub listing: Vec<String>,
}

impl Tabular for CheckReport {
    fn table(&self) -> String {
        let mut out = String::new();
        for p in &self.proofs {
            let c = &p.checked;
            let _ = writeln!(out, "{} {}", c.proof_id, if c.valid { "valid" } else { "INVALID" });
            for (i, (formula, step)) in p.listing.iter().zip(&c.steps).enumerate() {
                let how = match step {
                    Some(app) => {
                        let mut s = format!("{:?}", app.rule);
                        if !app.premises.is_empty() {
                            let ps: Vec<String> = app.premises.iter().map(ToString::to_string).collect();
                            let _ = write!(s, " from {}", ps.join(","));
                        }
                        if let Some(h) = &app.implicit {
                            let _ = write!(s, " via unlisted {} ({:?})", h.formula, h.rule);
                        }
                        s
                    }
                    None => "-".to_string(),
                };
                let _ = writeln!(out, "  {i:>2}. {formula:<22} {how}");
            }
            for v in &c.violations {
                let _ = writeln!(out, "  step {}: {}", v.step, v.reason);
            }
        }
        out
    }
}

pub fn check_cmd(command: String, world_path: &Path, ks_path: &Path, strict: bool) -> Result<Output, CliError> {
    let (world_text, world_digest) = read(world_path)?;
    let world = WorldSpec::from_json(&world_text)?;
    let (ks, ks_digest) = load_system(ks_path)?;
    let mode = if strict { CheckMode::Strict } else { CheckMode::Lenient };
    let checked = check_knowledge_system(&world, &ks, mode)?;
    let proofs: Vec<CheckedProofReport> = checked
        .into_iter()
        .zip(ks.proofs())
        .map(|(checked, p)| CheckedProofReport {
            checked,
            listing: texts(p.listing()),
        })
        .collect();
    let all_valid = proofs.iter().all(|p| p.checked.valid);
    let report = CheckReport { mode, all_valid, proofs };
    Ok(emit(Report::new(command, vec![world_digest, ks_digest], report), if all_valid { 0 } else { 2 }))
}

// ---------------------------------------------------------------- demo

#[derive(Debug, Serialize)]
pub struct MassRow {
    pub proof: String,
    pub goal: String,
    pub mass: Exact,
}

#[derive(Debug, Serialize)]
pub struct DemoReport {
    pub goals: Vec<ClassSummary>,
    pub measure: Vec<MassRow>,
    pub empty_set_weight: Bits,
    pub weights: Vec<WeightReport>,
    pub profiles: Vec<ProfileReport>,
}

impl Tabular for DemoReport {
    fn table(&self) -> String {
        let mut out = String::from("measure\n");
        for row in &self.measure {
            let _ = writeln!(out, "  {:<6} {:<10} {}", row.proof, row.goal, row.mass);
        }
        let _ = writeln!(out, "\nweights\n  D({{}}) = {}", self.empty_set_weight.fixed());
        for w in &self.weights {
            let _ = writeln!(out, "  {}", w.line());
        }
        out.push_str("\nprofiles\n");
        out.push_str(&profile_table(&self.profiles));
        out
    }
}

/// Subsets whose weights the demo reports.
pub const DEMO_SUBSETS: [&[&str]; 4] = [
    &["Day=Fri"],
    &["Brd(R2,Dok)"],
    &["Day≠Fri", "Brd(R2,Dok)"],
    &["Day≠Fri", "Brd(R2,Dok)", "Win(Bok)∨Win(Fok)"],
];

pub fn demo_report() -> Result<DemoReport, CliError> {
    let ks = builtin_example();
    let measure = proof_measure(&ks)?;
    let weights = DEMO_SUBSETS
        .iter()
        .map(|items| Ok(WeightReport::compute(&ks, &measure, &parse_subset(items.iter().copied(), "demo")?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let ids: Vec<&str> = ks.proofs().iter().map(|p| p.id()).collect();
    Ok(DemoReport {
        goals: ks
            .goals()
            .iter()
            .enumerate()
            .map(|(i, g)| ClassSummary {
                goal: g.as_str().to_string(),
                proofs: ks.class_ids(i).into_iter().map(String::from).collect(),
            })
            .collect(),
        measure: ks
            .proofs()
            .iter()
            .zip(measure.per_proof(&ks))
            .map(|(p, (id, mass))| MassRow {
                proof: id.to_string(),
                goal: p.goal().as_str().to_string(),
                mass: Exact(mass),
            })
            .collect(),
        empty_set_weight: Bits(weight(&ks, &measure, &[]).value),
        weights,
        profiles: profiles_of(&ks, &measure, &ids, SearchOptions::default())?,
    })
}

pub fn demo_cmd(command: String) -> Result<Output, CliError> {
    Ok(emit(Report::new(command, vec![builtin_digest()], demo_report()?), 0))
}

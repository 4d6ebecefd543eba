use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{KernelError, WorldSpec};
use crate::model::normalize_formula;

/// A structured formula of the competition language.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KFormula {
    DayIs(String),
    DayIsNot(String),
    Brd { source: String, participant: String },
    Win(String),
    NotWin(String),
    /// At least two participants; a single one is a plain `Win`.
    WinDisj(BTreeSet<String>),
}

impl KFormula {
    pub fn brd(source: &str, participant: &str) -> Self {
        KFormula::Brd {
            source: source.to_string(),
            participant: participant.to_string(),
        }
    }

    /// `Win` of the single remaining participant, or their disjunction; `None` if nobody is left.
    pub fn win_among(mut participants: BTreeSet<String>) -> Option<Self> {
        match participants.len() {
            0 => None,
            1 => participants.pop_first().map(KFormula::Win),
            _ => Some(KFormula::WinDisj(participants)),
        }
    }

    /// Broadcasts and day facts are the only formulas a user may assert.
    pub fn is_user_data(&self) -> bool {
        matches!(self, KFormula::DayIs(_) | KFormula::DayIsNot(_) | KFormula::Brd { .. })
    }

    pub fn is_day_fact(&self) -> bool {
        matches!(self, KFormula::DayIs(_) | KFormula::DayIsNot(_))
    }
}

impl fmt::Display for KFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KFormula::DayIs(d) => write!(f, "Day={d}"),
            KFormula::DayIsNot(d) => write!(f, "Day≠{d}"),
            KFormula::Brd { source, participant } => write!(f, "Brd({source},{participant})"),
            KFormula::Win(p) => write!(f, "Win({p})"),
            KFormula::NotWin(p) => write!(f, "¬Win({p})"),
            KFormula::WinDisj(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| format!("Win({p})")).collect();
                f.write_str(&parts.join("∨"))
            }
        }
    }
}

impl Serialize for KFormula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `Day=d`, `Day≠d`, `Brd(R,a)`, `Win(a)`, `¬Win(a)` and `Win(a)∨Win(b)∨...`.
/// ASCII aliases and whitespace are accepted; every name must exist in `world`.
pub fn parse_kformula(text: &str, world: &WorldSpec) -> Result<KFormula, KernelError> {
    let unparsable = || KernelError::UnparsableFormula(text.trim().to_string());
    let normalized = normalize_formula(text).map_err(|_| unparsable())?;
    let compact: String = normalized.as_str().chars().filter(|c| !c.is_whitespace()).collect();

    let participant = |name: &str| -> Result<String, KernelError> {
        if name.is_empty() {
            Err(unparsable())
        } else if world.has_participant(name) {
            Ok(name.to_string())
        } else {
            Err(KernelError::UnknownName {
                kind: "participant",
                name: name.to_string(),
            })
        }
    };
    let day = |name: &str| -> Result<String, KernelError> {
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            Err(unparsable())
        } else if world.has_day(name) {
            Ok(name.to_string())
        } else {
            Err(KernelError::UnknownName {
                kind: "day",
                name: name.to_string(),
            })
        }
    };

    if let Some(d) = compact.strip_prefix("Day=") {
        return Ok(KFormula::DayIs(day(d)?));
    }
    if let Some(d) = compact.strip_prefix("Day≠") {
        return Ok(KFormula::DayIsNot(day(d)?));
    }
    if let Some(rest) = compact.strip_prefix('¬') {
        let inner = call(rest, "Win").ok_or_else(unparsable)?;
        return Ok(KFormula::NotWin(participant(inner)?));
    }
    if compact.contains('∨') {
        let mut set = BTreeSet::new();
        for part in compact.split('∨') {
            let inner = call(part, "Win").ok_or_else(unparsable)?;
            set.insert(participant(inner)?);
        }
        return KFormula::win_among(set).ok_or_else(unparsable);
    }
    if let Some(inner) = call(&compact, "Win") {
        return Ok(KFormula::Win(participant(inner)?));
    }
    if let Some(inner) = call(&compact, "Brd") {
        let (source, who) = inner.split_once(',').ok_or_else(unparsable)?;
        if source.is_empty() || who.contains(',') {
            return Err(unparsable());
        }
        if world.schedule(source).is_none() {
            return Err(KernelError::UnknownName {
                kind: "source",
                name: source.to_string(),
            });
        }
        return Ok(KFormula::brd(source, &participant(who)?));
    }
    Err(unparsable())
}

fn call<'a>(text: &'a str, name: &str) -> Option<&'a str> {
    let inner = text.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    (!inner.contains(['(', ')'])).then_some(inner)
}

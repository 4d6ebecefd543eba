use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{KFormula, KernelError};

/// When a source tells the truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    AlwaysTruthful,
    AlwaysDeceitful,
    TruthfulOn(BTreeSet<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reliability {
    Truthful,
    Deceitful,
    Unknown,
}

/// Participants, broadcast sources and the days they are judged on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldSpec {
    participants: Vec<String>,
    sources: BTreeMap<String, Schedule>,
    day_domain: Vec<String>,
}

impl WorldSpec {
    pub fn new(
        participants: Vec<String>,
        sources: BTreeMap<String, Schedule>,
        day_domain: Vec<String>,
    ) -> Result<Self, KernelError> {
        let invalid = |msg: String| Err(KernelError::InvalidWorld(msg));
        if participants.len() < 2 {
            return invalid("at least two participants are required".into());
        }
        if sources.is_empty() {
            return invalid("at least one source is required".into());
        }
        if day_domain.is_empty() {
            return invalid("day_domain is empty".into());
        }
        for (kind, names) in [("participant", &participants), ("day", &day_domain)] {
            let mut seen = BTreeSet::new();
            for name in names {
                if !is_name(name) {
                    return invalid(format!("{kind} name {name:?} is not a plain identifier"));
                }
                if !seen.insert(name) {
                    return invalid(format!("{kind} {name} listed twice"));
                }
            }
        }
        for (source, schedule) in &sources {
            if !is_name(source) {
                return invalid(format!("source name {source:?} is not a plain identifier"));
            }
            if let Schedule::TruthfulOn(days) = schedule {
                if let Some(day) = days.iter().find(|d| !day_domain.contains(d)) {
                    return invalid(format!("source {source} is truthful on {day}, which is not in day_domain"));
                }
            }
        }
        Ok(Self {
            participants,
            sources,
            day_domain,
        })
    }

    /// Bok, Dok and Fok; R1 always truthful, R2 truthful on Fridays, R3 always deceitful.
    pub fn competition() -> Self {
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let sources = BTreeMap::from([
            ("R1".to_string(), Schedule::AlwaysTruthful),
            ("R2".to_string(), Schedule::TruthfulOn(BTreeSet::from(["Fri".to_string()]))),
            ("R3".to_string(), Schedule::AlwaysDeceitful),
        ]);
        Self::new(names(&["Bok", "Dok", "Fok"]), sources, names(&["Fri", "Other"])).expect("fixture world is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, KernelError> {
        let doc: WorldDocument = serde_json::from_str(text).map_err(|e| KernelError::MalformedWorld(e.to_string()))?;
        doc.try_into()
    }

    pub fn to_document(&self) -> WorldDocument {
        WorldDocument {
            participants: self.participants.clone(),
            day_domain: self.day_domain.clone(),
            sources: self
                .sources
                .iter()
                .map(|(name, schedule)| {
                    let doc = match schedule {
                        Schedule::AlwaysTruthful => ScheduleDoc::Named("always_truthful".into()),
                        Schedule::AlwaysDeceitful => ScheduleDoc::Named("always_deceitful".into()),
                        Schedule::TruthfulOn(days) => ScheduleDoc::Days(TruthfulOn {
                            truthful_on: days.iter().cloned().collect(),
                        }),
                    };
                    (name.clone(), doc)
                })
                .collect(),
        }
    }

    pub fn participants(&self) -> &[String] {
        &self.participants
    }

    pub fn day_domain(&self) -> &[String] {
        &self.day_domain
    }

    pub fn schedule(&self, source: &str) -> Option<&Schedule> {
        self.sources.get(source)
    }

    pub fn sources(&self) -> impl Iterator<Item = (&str, &Schedule)> {
        self.sources.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn has_participant(&self, name: &str) -> bool {
        self.participants.iter().any(|p| p == name)
    }

    pub fn has_day(&self, name: &str) -> bool {
        self.day_domain.iter().any(|d| d == name)
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

/// The days still possible given the day facts among `facts`. Other formulas are ignored.
pub(crate) fn candidate_days<'w>(world: &'w WorldSpec, facts: &[KFormula]) -> Result<BTreeSet<&'w str>, KernelError> {
    let mut days: BTreeSet<&str> = world.day_domain.iter().map(String::as_str).collect();
    for fact in facts {
        match fact {
            KFormula::DayIs(d) => days.retain(|x| x == d),
            KFormula::DayIsNot(d) => {
                days.remove(d.as_str());
            }
            _ => continue,
        }
    }
    if days.is_empty() {
        let listed: Vec<String> = facts.iter().filter(|f| f.is_day_fact()).map(ToString::to_string).collect();
        return Err(KernelError::InconsistentDayContext(listed.join(", ")));
    }
    Ok(days)
}

/// Decides whether `source` is truthful under the day facts in `day_context`.
pub fn resolve_reliability(
    world: &WorldSpec,
    source: &str,
    day_context: &[KFormula],
) -> Result<Reliability, KernelError> {
    let schedule = world.schedule(source).ok_or_else(|| KernelError::UnknownName {
        kind: "source",
        name: source.to_string(),
    })?;
    for fact in day_context {
        if let KFormula::DayIs(d) | KFormula::DayIsNot(d) = fact {
            if !world.has_day(d) {
                return Err(KernelError::UnknownName {
                    kind: "day",
                    name: d.clone(),
                });
            }
        }
    }
    let days = candidate_days(world, day_context)?;
    Ok(match schedule {
        Schedule::AlwaysTruthful => Reliability::Truthful,
        Schedule::AlwaysDeceitful => Reliability::Deceitful,
        Schedule::TruthfulOn(on) => {
            if days.iter().all(|d| on.contains(*d)) {
                Reliability::Truthful
            } else if days.iter().all(|d| !on.contains(*d)) {
                Reliability::Deceitful
            } else {
                Reliability::Unknown
            }
        }
    })
}

/// On-disk shape of a world.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldDocument {
    pub participants: Vec<String>,
    pub day_domain: Vec<String>,
    pub sources: BTreeMap<String, ScheduleDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScheduleDoc {
    Named(String),
    Days(TruthfulOn),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruthfulOn {
    pub truthful_on: Vec<String>,
}

impl TryFrom<WorldDocument> for WorldSpec {
    type Error = KernelError;

    fn try_from(doc: WorldDocument) -> Result<Self, KernelError> {
        let mut sources = BTreeMap::new();
        for (name, schedule) in doc.sources {
            let schedule = match schedule {
                ScheduleDoc::Named(s) if s == "always_truthful" => Schedule::AlwaysTruthful,
                ScheduleDoc::Named(s) if s == "always_deceitful" => Schedule::AlwaysDeceitful,
                ScheduleDoc::Named(other) => {
                    return Err(KernelError::MalformedWorld(format!(
                        "source {name}: unknown schedule {other:?}"
                    )))
                }
                ScheduleDoc::Days(on) => Schedule::TruthfulOn(on.truthful_on.into_iter().collect()),
            };
            sources.insert(name, schedule);
        }
        WorldSpec::new(doc.participants, sources, doc.day_domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn day(d: &str) -> KFormula {
        KFormula::DayIs(d.into())
    }

    fn not_day(d: &str) -> KFormula {
        KFormula::DayIsNot(d.into())
    }

    #[test]
    fn competition_schedules() {
        let w = WorldSpec::competition();
        assert_eq!(resolve_reliability(&w, "R2", &[day("Fri")]).unwrap(), Reliability::Truthful);
        assert_eq!(resolve_reliability(&w, "R2", &[not_day("Fri")]).unwrap(), Reliability::Deceitful);
        assert_eq!(resolve_reliability(&w, "R3", &[]).unwrap(), Reliability::Deceitful);
        assert_eq!(resolve_reliability(&w, "R1", &[]).unwrap(), Reliability::Truthful);
        assert_eq!(resolve_reliability(&w, "R2", &[]).unwrap(), Reliability::Unknown);
    }

    #[test]
    fn inconsistent_context() {
        let w = WorldSpec::competition();
        assert!(matches!(
            resolve_reliability(&w, "R2", &[day("Fri"), not_day("Fri")]),
            Err(KernelError::InconsistentDayContext(_))
        ));
        assert!(matches!(
            resolve_reliability(&w, "R1", &[day("Fri"), day("Other")]),
            Err(KernelError::InconsistentDayContext(_))
        ));
        assert!(matches!(
            resolve_reliability(&w, "R9", &[]),
            Err(KernelError::UnknownName { kind: "source", .. })
        ));
    }

    #[test]
    fn partial_day_knowledge_over_a_wider_week() {
        let sources = BTreeMap::from([(
            "R".to_string(),
            Schedule::TruthfulOn(BTreeSet::from(["Sat".to_string(), "Sun".to_string()])),
        )]);
        let w = WorldSpec::new(
            vec!["A".into(), "B".into()],
            sources,
            vec!["Fri".into(), "Sat".into(), "Sun".into()],
        )
        .unwrap();
        assert_eq!(resolve_reliability(&w, "R", &[not_day("Fri")]).unwrap(), Reliability::Truthful);
        assert_eq!(resolve_reliability(&w, "R", &[not_day("Sat")]).unwrap(), Reliability::Unknown);
        assert_eq!(resolve_reliability(&w, "R", &[day("Fri")]).unwrap(), Reliability::Deceitful);
    }

    #[test]
    fn world_document_round_trip() {
        let text = r#"{ "participants": ["Bok","Dok","Fok"], "day_domain": ["Fri","Other"],
            "sources": { "R1": "always_truthful", "R2": {"truthful_on": ["Fri"]}, "R3": "always_deceitful" } }"#;
        let w = WorldSpec::from_json(text).unwrap();
        assert_eq!(w, WorldSpec::competition());
        let again: WorldSpec = w.to_document().try_into().unwrap();
        assert_eq!(again, w);
    }

    #[test]
    fn rejects_bad_worlds() {
        assert!(matches!(
            WorldSpec::from_json(r#"{"participants": ["A","B"], "day_domain": ["D"], "sources": {"R": "sometimes"}}"#),
            Err(KernelError::MalformedWorld(_))
        ));
        assert!(matches!(
            WorldSpec::from_json(r#"{"participants": ["A"], "day_domain": ["D"], "sources": {"R": "always_truthful"}}"#),
            Err(KernelError::InvalidWorld(_))
        ));
        assert!(matches!(
            WorldSpec::from_json(
                r#"{"participants": ["A","B"], "day_domain": ["D"], "sources": {"R": {"truthful_on": ["X"]}}}"#
            ),
            Err(KernelError::InvalidWorld(_))
        ));
        assert!(matches!(
            WorldSpec::from_json(r#"{"participants": ["A","B"], "day_domain": ["D"], "sources": {}, "x": 1}"#),
            Err(KernelError::MalformedWorld(_))
        ));
        assert!(WorldSpec::from_json("not json").is_err());
    }
}

use serde::{Deserialize, Serialize};

use super::{normalize_at, Formula, KnowledgeSystem, ModelError};

/// On-disk shape of a knowledge system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsDocument {
    pub goals: Vec<String>,
    pub proofs: Vec<ProofEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofEntry {
    pub id: String,
    pub formulas: Vec<String>,
}

/// Parses and validates a JSON knowledge-system document.
pub fn parse_knowledge_system(text: &str) -> Result<KnowledgeSystem, ModelError> {
    let doc: KsDocument =
        serde_json::from_str(text).map_err(|e| ModelError::MalformedDocument(e.to_string()))?;
    KnowledgeSystem::from_document(&doc)
}

impl KnowledgeSystem {
    pub fn from_document(doc: &KsDocument) -> Result<Self, ModelError> {
        let goals = doc
            .goals
            .iter()
            .enumerate()
            .map(|(i, g)| normalize_at(g, &format!("goals[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut proofs = Vec::with_capacity(doc.proofs.len());
        for (p, entry) in doc.proofs.iter().enumerate() {
            let formulas = entry
                .formulas
                .iter()
                .enumerate()
                .map(|(i, f)| normalize_at(f, &format!("proofs[{p}].formulas[{i}]")))
                .collect::<Result<Vec<Formula>, _>>()?;
            proofs.push((entry.id.clone(), formulas));
        }
        KnowledgeSystem::new(goals, proofs)
    }

    pub fn to_document(&self) -> KsDocument {
        KsDocument {
            goals: self.goals.iter().map(ToString::to_string).collect(),
            proofs: self
                .proofs
                .iter()
                .map(|p| ProofEntry {
                    id: p.id.clone(),
                    formulas: p.listing.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }
}

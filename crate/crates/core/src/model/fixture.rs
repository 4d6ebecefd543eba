//! The competition-winner knowledge system: three participants, three radio
//! sources, seven proofs.

use super::{KnowledgeSystem, KsDocument, ProofEntry};

const GOALS: [&str; 3] = ["Win(Bok)", "Win(Dok)", "Win(Fok)"];

const PROOFS: [(&str, &[&str]); 7] = [
    ("QB1", &["Day=Fri", "Brd(R2,Bok)", "Win(Bok)"]),
    ("QB2", &["Day≠Fri", "Brd(R2,Dok)", "Brd(R1,Bok)", "Win(Bok)"]),
    (
        "QB3",
        &[
            "Day≠Fri",
            "Brd(R2,Dok)",
            "Win(Bok)∨Win(Fok)",
            "Brd(R3,Fok)",
            "¬Win(Fok)",
            "Win(Bok)",
        ],
    ),
    ("QD1", &["Brd(R1,Dok)", "Win(Dok)"]),
    ("QD2", &["Day=Fri", "Brd(R3,Fok)", "Brd(R2,Dok)", "Win(Dok)"]),
    (
        "QD3",
        &["Day=Fri", "Brd(R3,Fok)", "Brd(R1,Dok)", "Brd(R2,Dok)", "Win(Dok)"],
    ),
    (
        "QF1",
        &[
            "Day≠Fri",
            "Brd(R2,Dok)",
            "Win(Bok)∨Win(Fok)",
            "Brd(R3,Bok)",
            "¬Win(Bok)",
            "Win(Fok)",
        ],
    ),
];

pub fn builtin_document() -> KsDocument {
    KsDocument {
        goals: GOALS.iter().map(|g| g.to_string()).collect(),
        proofs: PROOFS
            .iter()
            .map(|(id, fs)| ProofEntry {
                id: id.to_string(),
                formulas: fs.iter().map(|f| f.to_string()).collect(),
            })
            .collect(),
    }
}

pub fn builtin_example() -> KnowledgeSystem {
    KnowledgeSystem::from_document(&builtin_document()).expect("builtin fixture is valid")
}

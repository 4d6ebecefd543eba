//! Report envelope and value formatting shared by every command.

use std::fmt::Write as _;

use entweight::Rational;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: T,
}

impl<T: Serialize + Tabular> Report<T> {
    pub fn new(command: String, inputs: Vec<InputDigest>, results: T) -> Self {
        Self {
            tool: "entweight",
            version: env!("CARGO_PKG_VERSION"),
            schema: SCHEMA_VERSION,
            command,
            inputs,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} {} | {}\n", self.tool, self.version, self.command);
        for input in &self.inputs {
            let _ = writeln!(out, "input {} sha256:{}", input.source, input.sha256);
        }
        out.push('\n');
        out.push_str(&self.results.table());
        out
    }
}

/// Human-readable rendering of a result body.
pub trait Tabular {
    fn table(&self) -> String;
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(source: impl Into<String>, bytes: &[u8]) -> Self {
        Self {
            source: source.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Bits, serialized as a JSON number with six decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bits(pub f64);

impl Bits {
    pub fn fixed(self) -> String {
        let s = format!("{:.6}", self.0);
        if s == "-0.000000" {
            "0.000000".to_string()
        } else {
            s
        }
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.fixed()).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// An exact rational, always written `p/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

//! JSON report envelope and run manifests.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Everything needed to rerun a command and compare its results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub budget: Option<serde_json::Value>,
    pub tool_version: String,
    pub started_at: String,
    pub finished_at: String,
    /// SHA-256 of each input file, keyed by the path as given.
    pub input_digests: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn start(command_line: Vec<String>) -> Self {
        RunManifest {
            command_line,
            seed: None,
            budget: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started_at: now(),
            finished_at: String::new(),
            input_digests: BTreeMap::new(),
        }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.input_digests.insert(name.to_string(), sha256_hex(bytes));
    }

    pub fn finish(&mut self) {
        self.finished_at = now();
    }
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// A budget ran out; the result is the best found so far.
    Partial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report<T> {
    pub schema_version: u32,
    pub command: String,
    pub status: Status,
    pub manifest: RunManifest,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, status: Status, manifest: RunManifest, result: T) -> Self {
        Report { schema_version: SCHEMA_VERSION, command: command.to_string(), status, manifest, result }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Serde adapter writing a coloring as its kcol text.
pub mod kcol_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::coloring::TwoColoring;
    use crate::kcol;

    pub fn serialize<S: Serializer>(c: &TwoColoring, s: S) -> Result<S::Ok, S::Error> {
        kcol::encode(c).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<TwoColoring, D::Error> {
        let text = String::deserialize(d)?;
        kcol::decode(&text).map_err(serde::de::Error::custom)
    }
}

pub mod opt_kcol_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::coloring::TwoColoring;
    use crate::kcol;

    pub fn serialize<S: Serializer>(c: &Option<TwoColoring>, s: S) -> Result<S::Ok, S::Error> {
        c.as_ref().map(kcol::encode).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<TwoColoring>, D::Error> {
        Option::<String>::deserialize(d)?.map(|t| kcol::decode(&t).map_err(serde::de::Error::custom)).transpose()
    }
}

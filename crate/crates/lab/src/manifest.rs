use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::table::Artifact;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Flat TOML text of the effective config.
    pub config: String,
    pub threads: usize,
    pub started_unix_seconds: u64,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<OutputEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn entries(artifacts: &[Artifact]) -> Vec<OutputEntry> {
    artifacts
        .iter()
        .map(|a| OutputEntry {
            file: a.name.clone(),
            bytes: a.bytes.len() as u64,
            sha256: sha256_hex(&a.bytes),
        })
        .collect()
}

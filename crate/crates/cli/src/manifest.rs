//! Run manifests: a JSON sidecar written next to every output file, recording
//! the command, its resolved flags, input digests, and the tool version, so
//! that any artifact can be traced back to the exact invocation that made it
//! and regenerated bit-for-bit.

use crate::CliError;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

/// SHA-256 of an input file, hex-encoded, keyed by the path as given on the
/// command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to reproduce one command invocation.
///
/// `flags` holds the resolved value of every flag, defaults included, keyed
/// by flag name; `argv` is the invocation verbatim. Re-running `argv` against
/// inputs with matching digests reproduces the outputs byte-for-byte
/// (timestamps come from `SOURCE_DATE_EPOCH` when set, so even the sidecar
/// itself is reproducible).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub flags: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<String>,
    pub unix_time: u64,
}

impl RunManifest {
    pub fn new(command: &str, argv: &[String]) -> Self {
        RunManifest {
            command: command.to_string(),
            argv: argv.to_vec(),
            flags: Map::new(),
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            unix_time: manifest_timestamp(),
        }
    }

    pub fn flag(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.flags.insert(name.to_string(), value.into());
        self
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Records an input file by path and content digest.
    pub fn input(mut self, path: &str, contents: &[u8]) -> Self {
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: sha256_hex(contents),
        });
        self
    }

    pub fn output(mut self, path: &str) -> Self {
        self.outputs.push(path.to_string());
        self
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("manifest serializes");
        out.push('\n');
        out
    }

    /// Writes `<output>.manifest.json` next to the given output file.
    pub fn write_sidecar(&self, output: &Path) -> Result<(), CliError> {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        std::fs::write(&name, self.render_json()).map_err(|e| {
            CliError::Internal(format!("cannot write {}: {e}", name.to_string_lossy()))
        })
    }
}

pub fn parse_manifest_json(text: &str) -> Result<RunManifest, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Seconds since the Unix epoch, honoring `SOURCE_DATE_EPOCH` for
/// reproducible builds of the sidecar files.
pub fn manifest_timestamp() -> u64 {
    if let Some(fixed) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        return fixed;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

//! Run manifests embedded in every JSON output: tool identity, the exact
//! engine configuration used, and content digests of every input file, so a
//! result can be traced back to what produced it.

use std::collections::BTreeMap;
use std::path::Path;

use scholarlink::linker::EngineConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub config: EngineConfig,
    /// Label -> lowercase hex SHA-256 of the input file's bytes.
    pub inputs: BTreeMap<String, String>,
    /// Unix seconds, taken from SOURCE_DATE_EPOCH when set; omitted otherwise
    /// so repeated runs stay byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str, config: EngineConfig) -> Self {
        RunManifest {
            tool: "scholarlink".to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            inputs: BTreeMap::new(),
            timestamp: std::env::var("SOURCE_DATE_EPOCH")
                .ok()
                .and_then(|v| v.parse().ok()),
        }
    }

    pub fn record_input(&mut self, label: &str, path: &Path) -> std::io::Result<()> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        self.inputs.insert(label.to_string(), hex::encode(digest));
        Ok(())
    }
}

//! Run manifests: enough to regenerate an output file and check it byte for byte.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::output::SCHEMA_VERSION;

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub command: String,
    /// Fully resolved command line, without the program name; replay parses it again.
    pub args: Vec<String>,
    /// Resolved parameters, for reading; `args` is authoritative.
    pub params: Value,
    pub seed: Option<u64>,
    pub output_sha256: String,
    pub output_bytes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(command: &str, args: Vec<String>, params: Value, seed: Option<u64>, output: &[u8]) -> Self {
        RunManifest {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            args,
            params,
            seed,
            output_sha256: sha256_hex(output),
            output_bytes: output.len() as u64,
            summary: None,
        }
    }

    pub fn with_summary(mut self, summary: Value) -> Self {
        self.summary = Some(summary);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: RunManifest =
            serde_json::from_str(text).map_err(|e| Error::Domain(format!("unreadable manifest: {e}")))?;
        if m.schema_version != SCHEMA_VERSION {
            return Err(Error::Domain(format!(
                "manifest schema version {} is not supported (expected {SCHEMA_VERSION})",
                m.schema_version
            )));
        }
        Ok(m)
    }

    pub fn matches(&self, output: &[u8]) -> bool {
        self.output_bytes == output.len() as u64 && self.output_sha256 == sha256_hex(output)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn round_trip() {
        let m = RunManifest::new(
            "dist",
            vec!["dist".into(), "--d".into(), "1".into()],
            json!({"d": 1}),
            None,
            b"x\n",
        )
        .with_summary(json!({"rows": 1}));
        let back = RunManifest::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(back.matches(b"x\n"));
        assert!(!back.matches(b"y\n"));
    }

    #[test]
    fn rejects_other_schema() {
        let mut m = RunManifest::new("dist", vec![], json!({}), None, b"");
        m.schema_version = SCHEMA_VERSION + 1;
        assert!(RunManifest::from_json(&m.to_json()).is_err());
    }
}

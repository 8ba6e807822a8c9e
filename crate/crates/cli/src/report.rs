use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use torweyl::TorusAction;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the canonical JSON form of the input action.
    pub input_digest: Option<String>,
    pub options: Value,
}

/// Every JSON report: the command result plus where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub provenance: Provenance,
    pub input: Option<TorusAction>,
    pub result: Value,
}

impl ReportDocument {
    pub fn new(command: &str, input: Option<&TorusAction>, options: Value, result: Value) -> Self {
        ReportDocument {
            provenance: Provenance {
                tool: "torweyl".into(),
                version: TOOL_VERSION.into(),
                command: command.into(),
                input_digest: input.map(digest),
                options,
            },
            input: input.cloned(),
            result,
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
        text.push('\n');
        text
    }
}

pub fn digest(a: &TorusAction) -> String {
    let canonical = serde_json::to_string(&serde_json::to_value(a).expect("actions serialize")).expect("serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

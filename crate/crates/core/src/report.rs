//! The JSON report emitted by every CLI subcommand.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Identifies the merge rule: two smallest entries merged, the sum inserted
/// before any equal entries.
pub const RULESET: &str = "standardized-merge/insert-before-ties";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub ruleset: String,
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            ruleset: RULESET.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Echo of the parsed inputs; `null` under `--quiet`.
    pub inputs: Value,
    pub results: Value,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results,
            provenance: Provenance::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Emits, parses the output back, and emits again; `None` if the two
    /// renderings differ.
    pub fn emit_checked(&self) -> Option<String> {
        let first = self.to_json();
        let second = Report::from_json(&first).ok()?.to_json();
        (first == second).then_some(first)
    }
}

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    /// Every certificate was re-validated by the exhaustive oracle.
    OracleChecked,
    /// A certificate exists that was not re-validated.
    Unverified,
    /// The run produced no certificate.
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    pub outcome: String,
    pub exit_code: i32,
    pub certificates: Vec<String>,
    pub wall_time_ms: u128,
    pub verification: Verification,
    pub details: Value,
}

impl RunReport {
    pub fn new(command: impl Into<String>, parameters: Value) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            parameters,
            outcome: String::new(),
            exit_code: 0,
            certificates: Vec::new(),
            wall_time_ms: 0,
            verification: Verification::NotApplicable,
            details: Value::Null,
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("report serializes");
        std::fs::write(path, text + "\n")
    }
}

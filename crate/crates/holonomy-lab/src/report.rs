//! Machine-readable verification reports.
//!
//! Reports are deterministic for identical inputs and toolkit version: maps are
//! ordered, all numbers are exact (rationals serialize as strings), and timing
//! is excluded unless explicitly requested.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::Result;

#[derive(Serialize)]
pub struct Report {
    /// Echo of the invoking command line.
    pub command: String,
    /// SHA-256 of the consumed spec file, when there was one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec_hash: Option<String>,
    pub version: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub dimensions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<String, bool>,
    /// Certificates and other structured payloads.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    /// Present only when timings were requested; breaks byte-for-byte
    /// determinism by design.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            spec_hash: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            dimensions: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            details: None,
            timing_ms: None,
        }
    }

    pub fn dimension(&mut self, key: &str, value: usize) -> &mut Self {
        self.dimensions.insert(key.to_string(), value);
        self
    }

    pub fn verdict(&mut self, key: &str, value: bool) -> &mut Self {
        self.verdicts.insert(key.to_string(), value);
        self
    }

    pub fn details(&mut self, value: serde_json::Value) -> &mut Self {
        self.details = Some(value);
        self
    }

    /// All recorded verdicts hold (vacuously true when none were recorded).
    pub fn all_pass(&self) -> bool {
        self.verdicts.values().all(|v| *v)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Key/value table of the dimensions and verdicts.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        out.push_str(&format!("command,{:?}\n", self.command));
        out.push_str(&format!("version,{}\n", self.version));
        if let Some(h) = &self.spec_hash {
            out.push_str(&format!("spec_hash,{h}\n"));
        }
        for (k, v) in &self.dimensions {
            out.push_str(&format!("{k},{v}\n"));
        }
        for (k, v) in &self.verdicts {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }

    pub fn write_to(&self, w: &mut dyn Write, format: ReportFormat) -> Result<()> {
        match format {
            ReportFormat::Json => writeln!(w, "{}", self.to_json()?)?,
            ReportFormat::Csv => write!(w, "{}", self.to_csv())?,
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_json() {
        let build = || {
            let mut r = Report::new("holonomy-lab solve --parabolic --n 1");
            r.dimension("dim_g", 14).dimension("dim_R", 43);
            r.verdict("parametric_match", true);
            r
        };
        let a = build().to_json().unwrap();
        let b = build().to_json().unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"dim_R\": 43"));
        assert!(!a.contains("timing_ms"));
    }

    #[test]
    fn csv_table() {
        let mut r = Report::new("holonomy-lab berger --family g6 --n 2");
        r.dimension("dim_g", 6).verdict("berger", true);
        let csv = r.to_csv();
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("dim_g,6\n"));
        assert!(csv.contains("berger,true\n"));
    }

    #[test]
    fn pass_aggregation() {
        let mut r = Report::new("x");
        assert!(r.all_pass());
        r.verdict("a", true).verdict("b", false);
        assert!(!r.all_pass());
    }
}

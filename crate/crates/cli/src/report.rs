use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Machine-readable outcome of a run: flat metrics, each gated by a threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub config: serde_json::Value,
    pub metrics: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, f64>,
    pub pass: bool,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        VerificationReport {
            command: command.to_string(),
            config,
            metrics: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            pass: false,
            runtime_ms: 0,
            warnings: Vec::new(),
            error: None,
        }
    }

    pub fn record(&mut self, name: &str, value: f64, threshold: f64) {
        self.metrics.insert(name.to_string(), value);
        self.thresholds.insert(name.to_string(), threshold);
    }

    /// Metrics above their threshold (NaN counts as failing).
    pub fn failures(&self) -> Vec<&str> {
        self.metrics
            .iter()
            .filter(|(k, v)| {
                let within = **v <= self.thresholds[k.as_str()];
                !within
            })
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// Sets `pass` from the metrics and the error slot.
    pub fn finalize(&mut self, runtime_ms: u64) {
        self.runtime_ms = runtime_ms;
        self.pass = self.error.is_none() && !self.metrics.is_empty() && self.failures().is_empty();
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut text = self.to_json()?;
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_requires_every_metric_within_threshold() {
        let mut r = VerificationReport::new("verify", serde_json::Value::Null);
        r.finalize(0);
        assert!(!r.pass, "an empty report must not pass");

        r.record("a", 1e-12, 1e-9);
        r.record("b", 1e-9, 1e-9);
        r.finalize(3);
        assert!(r.pass);
        assert_eq!(r.runtime_ms, 3);

        r.record("c", f64::NAN, 1.0);
        r.finalize(3);
        assert!(!r.pass);
        assert_eq!(r.failures(), vec!["c"]);

        r.metrics.remove("c");
        r.error = Some("solver failed".into());
        r.finalize(3);
        assert!(!r.pass);
    }

    #[test]
    fn json_round_trip() {
        let mut r = VerificationReport::new("basis", serde_json::json!({ "n_points": 9 }));
        r.record("closure_max_err", 1e-16, 1e-12);
        r.finalize(1);
        let text = r.to_json().unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(!text.contains("\"error\""));
    }
}

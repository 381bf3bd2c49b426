use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Kg,
    Maxwell,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Kg => "kg",
            Scenario::Maxwell => "maxwell",
        })
    }
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_TIMES: [f64; 2] = [0.1, 1.0];
pub const DEFAULT_TRIALS: usize = 8;
pub const DEFAULT_MASS: f64 = 1.0;

/// Parameters of one `verify` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub n_points: usize,
    pub spacing: f64,
    /// Only meaningful for the scalar field; `None` means the default mass.
    pub mass: Option<f64>,
    pub tolerance: f64,
    pub covariance_times: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(scenario: Scenario, n_points: usize, spacing: f64) -> Self {
        RunConfig {
            scenario,
            n_points,
            spacing,
            mass: None,
            tolerance: DEFAULT_TOLERANCE,
            covariance_times: DEFAULT_TIMES.to_vec(),
            trials: DEFAULT_TRIALS,
            seed: 0,
            output_path: None,
        }
    }

    pub fn effective_mass(&self) -> f64 {
        self.mass.unwrap_or(DEFAULT_MASS)
    }

    /// Checks every field. Returns the warnings to surface to the user.
    pub fn validate(&self) -> Result<Vec<String>> {
        let usage = |m: &str| Err(CliError::Usage(m.to_string()));
        if self.n_points < 3 {
            return usage("n_points must be at least 3");
        }
        if self.n_points.is_multiple_of(2) {
            return usage("n_points must be odd");
        }
        if !(self.spacing.is_finite() && self.spacing > 0.0) {
            return usage("spacing must be a positive finite number");
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return usage("tolerance must be a positive finite number");
        }
        if self.covariance_times.iter().any(|t| !t.is_finite()) {
            return usage("covariance times must be finite");
        }
        if self.trials == 0 {
            return usage("trials must be at least 1");
        }
        let mut warnings = Vec::new();
        match (self.scenario, self.mass) {
            (Scenario::Kg, Some(m)) if !(m.is_finite() && m > 0.0) => {
                return usage("mass must be a positive finite number");
            }
            (Scenario::Maxwell, Some(_)) => warnings.push("mass is ignored for the maxwell scenario".to_string()),
            _ => {}
        }
        Ok(warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn usage_message(cfg: &RunConfig) -> String {
        match cfg.validate() {
            Err(CliError::Usage(m)) => m,
            other => panic!("expected a usage error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::new(Scenario::Kg, 5, 0.7);
        assert_eq!(cfg.validate().unwrap(), Vec::<String>::new());
        assert_eq!(cfg.effective_mass(), 1.0);
        assert_eq!(cfg.covariance_times, vec![0.1, 1.0]);
        assert_eq!(cfg.trials, 8);
    }

    #[test]
    fn even_grid_is_a_usage_error() {
        assert_eq!(usage_message(&RunConfig::new(Scenario::Kg, 4, 1.0)), "n_points must be odd");
        assert_eq!(usage_message(&RunConfig::new(Scenario::Kg, 1, 1.0)), "n_points must be at least 3");
    }

    #[test]
    fn field_checks() {
        let mut cfg = RunConfig::new(Scenario::Kg, 3, 0.0);
        assert!(usage_message(&cfg).contains("spacing"));
        cfg.spacing = 1.0;
        cfg.mass = Some(-1.0);
        assert!(usage_message(&cfg).contains("mass"));
        cfg.mass = Some(1.0);
        cfg.tolerance = 0.0;
        assert!(usage_message(&cfg).contains("tolerance"));
        cfg.tolerance = 1e-9;
        cfg.trials = 0;
        assert!(usage_message(&cfg).contains("trials"));
        cfg.trials = 1;
        cfg.covariance_times = vec![f64::NAN];
        assert!(usage_message(&cfg).contains("times"));
    }

    #[test]
    fn maxwell_mass_warns() {
        let mut cfg = RunConfig::new(Scenario::Maxwell, 3, 1.0);
        cfg.mass = Some(2.0);
        assert_eq!(cfg.validate().unwrap().len(), 1);
    }
}

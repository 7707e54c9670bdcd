use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "coxnorm.report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one inequality or structural check: `lhs ≤ rhs` up to `tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    pub tol: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub sizes: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = rhs - lhs;
        CheckReport {
            schema: REPORT_SCHEMA.to_string(),
            name: name.into(),
            lhs,
            rhs,
            margin,
            tol,
            verdict: verdict_for(margin, tol),
            seed: None,
            trial: None,
            sizes: BTreeMap::new(),
            annotation: None,
            violations: Vec::new(),
        }
    }

    /// A pass/fail structural check: `lhs` counts violations against `rhs = 0`.
    pub fn from_violations(name: impl Into<String>, violations: Vec<String>) -> Self {
        let mut r = CheckReport::new(name, violations.len() as f64, 0.0, 0.0);
        r.violations = violations;
        r
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Whether the stored verdict agrees with margin and tolerance.
    pub fn is_consistent(&self) -> bool {
        self.verdict == verdict_for(self.margin, self.tol) && self.margin == self.rhs - self.lhs
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
    pub fn with_trial(mut self, trial: u64) -> Self {
        self.trial = Some(trial);
        self
    }
    pub fn with_size(mut self, key: &str, value: u64) -> Self {
        self.sizes.insert(key.to_string(), value);
        self
    }
    pub fn with_annotation(mut self, note: impl Into<String>) -> Self {
        self.annotation = Some(note.into());
        self
    }
    pub fn with_violation(mut self, v: impl Into<String>) -> Self {
        self.violations.push(v.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn verdict_for(margin: f64, tol: f64) -> Verdict {
    // NaN margins fail
    if margin >= -tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

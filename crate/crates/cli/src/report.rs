//! Machine-readable outcome of a verification suite.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    /// The identity being checked.
    pub anchor: String,
    /// Digest of the input description.
    pub inputs: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub corpus: String,
    pub checks: Vec<Check>,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        format!(
            "{}: {} ({ok}/{} checks, {:.1} s)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.wall_time_ms as f64 / 1000.0
        )
    }
}

pub fn digest(inputs: &str) -> String {
    hex::encode(&Sha256::digest(inputs.as_bytes())[..8])
}

/// Collects checks for one suite.
#[derive(Default)]
pub struct Checks {
    checks: Vec<Check>,
}

impl Checks {
    pub fn record(&mut self, id: impl Into<String>, anchor: &str, inputs: &str, counterexample: Option<Value>) {
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            inputs: digest(inputs),
            passed: counterexample.is_none(),
            counterexample,
        });
    }

    pub fn pass(&mut self, id: impl Into<String>, anchor: &str, inputs: &str) {
        self.record(id, anchor, inputs, None);
    }

    /// Passes when `ok`; otherwise stores the payload.
    pub fn expect(&mut self, id: impl Into<String>, anchor: &str, inputs: &str, ok: bool, payload: impl FnOnce() -> Value) {
        let c = if ok { None } else { Some(payload()) };
        self.record(id, anchor, inputs, c);
    }

    pub fn into_report(mut self, suite: &str, corpus: String, start: std::time::Instant) -> SuiteReport {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteReport { suite: suite.into(), corpus, checks: self.checks, wall_time_ms: start.elapsed().as_millis() }
    }
}

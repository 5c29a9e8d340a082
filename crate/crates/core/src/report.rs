//! Machine-readable results for the verification suites.

use serde::Serialize;

/// Outcome of one suite run: how many instances were checked and which, if
/// any, failed. Failures are sorted by key so reports are deterministic.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub key: String,
    pub detail: String,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            instances: 0,
            failures: vec![],
        }
    }

    pub fn record(&mut self, ok: bool, key: impl Into<String>, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(Failure {
                key: key.into(),
                detail: detail(),
            });
        }
    }

    pub fn fail(&mut self, key: impl Into<String>, detail: impl Into<String>) {
        self.instances += 1;
        self.failures.push(Failure {
            key: key.into(),
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Canonical form: failures ordered by key then detail.
    pub fn finish(mut self) -> Self {
        self.failures
            .sort_by(|a, b| a.key.cmp(&b.key).then(a.detail.cmp(&b.detail)));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }
}

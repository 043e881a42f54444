use std::path::Path;

use anyhow::Context;
use relroot::theoremlab::{Status, VerificationCase};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite: String,
    pub tool_version: String,
    pub cases: Vec<VerificationCase>,
    pub summary: Summary,
    pub wall_time: f64,
}

impl SuiteReport {
    /// Cases are sorted by id so the report does not depend on scheduling.
    pub fn new(suite: &str, mut cases: Vec<VerificationCase>, wall_time: f64) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |s: Status| cases.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        SuiteReport {
            suite: suite.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            cases,
            summary,
            wall_time,
        }
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_canonical_json(&self) -> String {
        canonical(&serde_json::to_value(self).expect("serializable"))
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, self.to_canonical_json())
            .with_context(|| format!("cannot write report to {}", path.display()))
    }
}

/// Re-serialize through `Value`, whose maps are ordered by key.
pub fn canonical(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

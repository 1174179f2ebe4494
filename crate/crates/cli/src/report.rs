use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tilewalk::verify::Check;

/// One check as it appears in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub first_failure: Option<String>,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl From<Check> for CheckResult {
    fn from(c: Check) -> Self {
        CheckResult { name: c.name, passed: c.passed, first_failure: c.first_failure, expected: c.expected, actual: c.actual }
    }
}

/// Values are decimal strings so that no precision is lost in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Wall time per route in seconds.
    pub timings: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport { command, passed: true, checks: Vec::new(), timings: BTreeMap::new(), table: None }
    }

    pub fn push(&mut self, c: impl Into<CheckResult>) {
        let c = c.into();
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn summary_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}", c.name));
            if !c.passed {
                if let Some(n) = &c.first_failure {
                    out.push_str(&format!(" at {n}"));
                }
                if let Some(e) = &c.expected {
                    out.push_str(&format!(" expected {e}"));
                }
                if let Some(a) = &c.actual {
                    out.push_str(&format!(" actual {a}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

//! Run reports: human text on stdout, optional JSON on disk.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Budget {
    pub max_cubes: usize,
    pub time_limit_secs: Option<u64>,
}

/// What a subcommand hands back before it is wrapped in a [`RunReport`].
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    /// `(label, value)` lines for the human report.
    pub summary: Vec<(String, String)>,
    pub results: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
    pub complete_through: Option<usize>,
}

impl Outcome {
    pub fn line(&mut self, label: &str, value: impl ToString) {
        self.summary.push((label.into(), value.to_string()));
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(value).expect("report values serialize"));
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, ok, detail));
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

/// Wall time is deliberately absent so identical inputs give identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub version: String,
    pub input_digest: String,
    pub budget: Budget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete_through: Option<usize>,
    pub checks: Vec<Check>,
    pub results: serde_json::Map<String, Value>,
}

impl RunReport {
    pub fn new(command: &str, digest: String, budget: Budget, out: Outcome) -> Self {
        RunReport {
            schema: SCHEMA,
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input_digest: digest,
            budget,
            complete_through: out.complete_through,
            checks: out.checks,
            results: out.results,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, summary: &[(String, String)]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "nmix {} (schema {}, v{})", self.command, self.schema, self.version);
        let _ = writeln!(s, "  input {}", self.input_digest);
        if let Some(c) = self.complete_through {
            let _ = writeln!(s, "  complete through degree {c}");
        }
        let width = summary.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in summary {
            let _ = writeln!(s, "  {k:<width$}  {v}");
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            if c.detail.is_empty() {
                let _ = writeln!(s, "  [{tag}] {}", c.name);
            } else {
                let _ = writeln!(s, "  [{tag}] {}: {}", c.name, c.detail);
            }
        }
        s
    }
}

/// SHA-256 over length-prefixed input fields.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn field(&mut self, key: &str, value: &[u8]) -> &mut Self {
        for part in [key.as_bytes(), value] {
            self.0.update((part.len() as u64).to_le_bytes());
            self.0.update(part);
        }
        self
    }

    pub fn finish(self) -> String {
        let bytes = self.0.finalize();
        let mut s = String::from("sha256:");
        for b in bytes {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_separates_fields() {
        let mut a = InputDigest::default();
        a.field("ab", b"c");
        let mut b = InputDigest::default();
        b.field("a", b"bc");
        assert_ne!(a.finish(), b.finish());
    }

    #[test]
    fn json_is_stable() {
        let mut out = Outcome::default();
        out.result("z", 1);
        out.result("a", [1, 2]);
        out.check("c", true, "");
        let budget = Budget {
            max_cubes: 10,
            time_limit_secs: None,
        };
        let r = RunReport::new("x", "sha256:0".into(), budget.clone(), out.clone());
        let again = RunReport::new("x", "sha256:0".into(), budget, out);
        assert_eq!(r.to_json(), again.to_json());
        assert!(r.to_json().contains("\"schema\": 1"));
        assert!(!r.to_json().contains("wall"));
    }
}

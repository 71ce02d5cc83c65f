//! Verification reports: ordered lists of named pass/fail checks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// What identity is being checked, in words.
    pub reference: String,
    pub status: Status,
    /// First failing entry, or the confirming value.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    /// Wall-clock time; the only nondeterministic field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn with_config(mut self, key: &str, value: impl ToString) -> Self {
        self.config.insert(key.to_string(), value.to_string());
        self
    }

    pub fn record(
        &mut self,
        id: impl Into<String>,
        reference: impl Into<String>,
        passed: bool,
        witness: Option<String>,
    ) {
        self.checks.push(Check {
            id: id.into(),
            reference: reference.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    pub fn pass(
        &mut self,
        id: impl Into<String>,
        reference: impl Into<String>,
        witness: impl Into<String>,
    ) {
        self.record(id, reference, true, Some(witness.into()));
    }

    pub fn fail(
        &mut self,
        id: impl Into<String>,
        reference: impl Into<String>,
        witness: impl Into<String>,
    ) {
        self.record(id, reference, false, Some(witness.into()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    /// Appends another report's checks, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.id = format!("{prefix}{}", c.id);
            self.checks.push(c);
        }
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.find(id).is_some_and(|c| c.status == Status::Pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        for (k, v) in &self.config {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = write!(out, "[{tag}] {} ({})", c.id, c.reference);
            if let Some(w) = &c.witness {
                let _ = write!(out, ": {w}");
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let total = self.checks.len();
        let failed = self.failures().count();
        let _ = writeln!(out, "{} of {} checks passed", total - failed, total);
        out
    }
}

//! Pass/fail reports with witnesses, shared by every verification routine.

use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances evaluated.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: impl FnOnce() -> String) {
        let witness = if passed { None } else { Some(witness()) };
        self.checks.push(Check { name: name.into(), passed, checked: 1, witness });
    }

    /// Evaluate `f` on `0..count` in parallel; the lowest failing index is the witness.
    pub fn check_all<F>(&mut self, name: impl Into<String>, count: u64, f: F)
    where
        F: Fn(u64) -> Option<String> + Sync,
    {
        let witness = (0..count).into_par_iter().find_map_first(&f);
        self.checks.push(Check { name: name.into(), passed: witness.is_none(), checked: count, witness });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

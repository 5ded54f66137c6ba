//! The consolidated verification suite: every claim the project reproduces,
//! as a list of named checks runnable one by one. The acceptance tests and
//! the `repro` command both drive this module.

use std::time::{Duration, Instant};

/// Outcome of one suite criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn status_line(&self) -> String {
        format!(
            "criterion {:2} {:32} {} ({} ms)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_millis()
        )
    }
}

pub(crate) struct Check {
    pub passed: bool,
    pub details: Vec<String>,
}

impl Check {
    pub(crate) fn new() -> Self {
        Check {
            passed: true,
            details: Vec::new(),
        }
    }

    pub(crate) fn assert(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.details.push(format!("FAIL: {}", what()));
        }
    }

    pub(crate) fn note(&mut self, line: String) {
        self.details.push(line);
    }

    pub(crate) fn into_report(
        self,
        id: u32,
        name: &'static str,
        start: Instant,
    ) -> CriterionReport {
        CriterionReport {
            id,
            name,
            passed: self.passed,
            details: self.details,
            elapsed: start.elapsed(),
        }
    }
}

mod criteria;
pub use criteria::{all_criteria, criterion_ids, run_criterion};

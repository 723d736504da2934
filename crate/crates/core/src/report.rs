//! Pass/fail reporting for verification sweeps.
//!
//! A failed check always carries the first counterexample found, with both
//! sides of the violated equality, so a disagreement can be localized from
//! the report alone.

use std::fmt;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First counterexample, e.g. `d=4: lhs=160, rhs=96`. Empty on pass.
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
        }
    }

    /// Run `f` over `range` in order and record the first failure.
    pub fn sweep<I, F>(name: impl Into<String>, range: I, mut f: F) -> Self
    where
        I: IntoIterator<Item = u64>,
        F: FnMut(u64) -> Result<(), String>,
    {
        let name = name.into();
        for d in range {
            if let Err(detail) = f(d) {
                return Check::fail(name, detail);
            }
        }
        Check::pass(name)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "PASS {}", self.name)
        } else {
            write!(
                f,
                "FAIL {}: {}",
                self.name,
                self.detail.as_deref().unwrap_or("no detail")
            )
        }
    }
}

/// An ordered collection of checks from one verification run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks FAILED", self.checks.len())
        }
    }
}

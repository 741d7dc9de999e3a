//! Structured verification reports.

use std::time::Instant;

use serde::Serialize;

/// Outcome of a single check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    /// The named identity the check exercises, or "plumbing".
    pub identity: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    pub duration_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// All checks of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub duration_ms: f64,
}

impl Report {
    pub fn new(suite: &str, seed: u64, checks: Vec<Check>, duration_ms: f64) -> Report {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        Report {
            suite: suite.to_string(),
            seed,
            checks,
            passed,
            failed,
            duration_ms,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Human-readable summary, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (seed {}): {}/{} passed in {:.1} ms\n",
            self.suite,
            self.seed,
            self.passed,
            self.checks.len(),
            self.duration_ms
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {:<28} residual {:>10.3e} (tol {:>8.1e}, {:>8.1} ms) {} :: {}\n",
                match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                },
                c.id,
                c.residual,
                c.tolerance,
                c.duration_ms,
                c.identity,
                c.description,
            ));
        }
        out
    }
}

/// Helper for building checks with timing.
pub struct CheckBuilder {
    checks: Vec<Check>,
}

impl CheckBuilder {
    pub fn new() -> Self {
        CheckBuilder { checks: Vec::new() }
    }

    /// Runs a residual-valued check; passes when `residual <= tolerance`.
    pub fn residual(
        &mut self,
        id: &str,
        description: &str,
        identity: &str,
        tolerance: f64,
        body: impl FnOnce() -> f64,
    ) {
        let start = Instant::now();
        let residual = body();
        let duration_ms = start.elapsed().as_secs_f64() * 1e3;
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        self.checks.push(Check {
            id: id.to_string(),
            description: description.to_string(),
            identity: identity.to_string(),
            status,
            residual,
            tolerance,
            duration_ms,
        });
    }

    /// Runs an exact (structural equality) check; the residual reports the
    /// number of violations found.
    pub fn exact(
        &mut self,
        id: &str,
        description: &str,
        identity: &str,
        body: impl FnOnce() -> usize,
    ) {
        let start = Instant::now();
        let violations = body();
        let duration_ms = start.elapsed().as_secs_f64() * 1e3;
        self.checks.push(Check {
            id: id.to_string(),
            description: description.to_string(),
            identity: identity.to_string(),
            status: if violations == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            residual: violations as f64,
            tolerance: 0.0,
            duration_ms,
        });
    }

    pub fn finish(self) -> Vec<Check> {
        self.checks
    }
}

impl Default for CheckBuilder {
    fn default() -> Self {
        Self::new()
    }
}

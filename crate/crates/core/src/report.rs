//! Per-degree pass/fail reports for the identity verification suites.

use std::fmt;

/// One verified degree: `failure` carries a diff of the two sides when the
/// check failed.
#[derive(Debug, Clone)]
pub struct DegreeLine {
    pub degree: u32,
    pub failure: Option<String>,
}

/// Degree-by-degree result of checking one named identity.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: String,
    pub lines: Vec<DegreeLine>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        IdentityReport { name: name.into(), lines: Vec::new() }
    }

    pub fn push_ok(&mut self, degree: u32) {
        self.lines.push(DegreeLine { degree, failure: None });
    }

    pub fn push_fail(&mut self, degree: u32, diff: impl Into<String>) {
        self.lines.push(DegreeLine { degree, failure: Some(diff.into()) });
    }

    pub fn push(&mut self, degree: u32, ok: bool, diff: impl FnOnce() -> String) {
        if ok {
            self.push_ok(degree);
        } else {
            self.push_fail(degree, diff());
        }
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.failure.is_none())
    }

    /// First failing degree, if any.
    pub fn first_failure(&self) -> Option<&DegreeLine> {
        self.lines.iter().find(|l| l.failure.is_some())
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            match &line.failure {
                None => writeln!(f, "degree={} status=ok", line.degree)?,
                Some(diff) => {
                    writeln!(f, "degree={} status=FAIL", line.degree)?;
                    for d in diff.lines() {
                        writeln!(f, "  {d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

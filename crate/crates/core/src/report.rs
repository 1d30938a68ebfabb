//! Validation reports: the common output of every checker.
//!
//! A report is empty exactly when the checked structure satisfies every
//! axiom that was instantiated. Structural findings (dangling ids, mistyped
//! components) are kept apart from axiom violations so callers can tell a
//! malformed table from a well-formed table that fails a law.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FindingKind {
    Structural,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub kind: FindingKind,
    /// Short name of the law or check, e.g. `associativity`.
    pub check: String,
    /// Human-readable witness naming the offending ids or tuples.
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.findings.len()
    }

    pub fn structural(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.findings.push(Finding {
            kind: FindingKind::Structural,
            check: check.into(),
            witness: witness.into(),
        });
    }

    pub fn violation(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.findings.push(Finding {
            kind: FindingKind::Violation,
            check: check.into(),
            witness: witness.into(),
        });
    }

    pub fn has_structural(&self) -> bool {
        self.findings
            .iter()
            .any(|f| f.kind == FindingKind::Structural)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.kind == FindingKind::Violation)
    }

    /// Does some finding for `check` mention `needle` in its witness?
    pub fn mentions(&self, check: &str, needle: &str) -> bool {
        self.findings
            .iter()
            .any(|f| f.check == check && f.witness.contains(needle))
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }

    /// Prefix every check name, used when nesting sub-reports.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for f in &mut self.findings {
            f.check = format!("{prefix}.{}", f.check);
        }
        self
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return write!(f, "ok");
        }
        for (i, finding) in self.findings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let kind = match finding.kind {
                FindingKind::Structural => "structural",
                FindingKind::Violation => "violation",
            };
            write!(f, "[{kind}] {}: {}", finding.check, finding.witness)?;
        }
        Ok(())
    }
}

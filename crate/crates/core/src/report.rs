use std::fmt;

use serde::Serialize;

/// One violated law together with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({})", self.law, self.witness.join(", "))?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

/// Outcome of a validation pass. `failures` empty means the checked laws hold;
/// `notes` carry informational findings that do not invalidate the subject.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<Violation>,
    pub notes: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, law: &str, witness: Vec<String>, detail: impl Into<String>) {
        self.failures.push(Violation {
            law: law.to_string(),
            witness,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, law: &str, witness: Vec<String>, detail: impl Into<String>) {
        self.notes.push(Violation {
            law: law.to_string(),
            witness,
            detail: detail.into(),
        });
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        self.failures.first()
    }

    pub fn has_failure(&self, law: &str) -> bool {
        self.failures.iter().any(|v| v.law == law)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok")?;
        } else {
            write!(f, "{} violation(s)", self.failures.len())?;
            for v in &self.failures {
                write!(f, "\n  {v}")?;
            }
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

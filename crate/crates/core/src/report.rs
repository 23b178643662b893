use std::fmt;

use serde::Serialize;

use crate::witness::Witness;

/// Outcome of an exhaustive pointwise verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub ok: bool,
    pub checked: usize,
    pub witness: Option<Witness>,
    pub note: String,
}

impl OracleReport {
    pub fn pass(checked: usize, note: impl Into<String>) -> Self {
        OracleReport {
            ok: true,
            checked,
            witness: None,
            note: note.into(),
        }
    }

    pub fn fail(checked: usize, witness: Witness, note: impl Into<String>) -> Self {
        OracleReport {
            ok: false,
            checked,
            witness: Some(witness),
            note: note.into(),
        }
    }

    /// Conjunction; the first failing report wins and counts add up.
    pub fn and(self, other: OracleReport) -> OracleReport {
        if !self.ok {
            return OracleReport {
                checked: self.checked + other.checked,
                ..self
            };
        }
        let note = match (self.note.is_empty(), other.note.is_empty()) {
            (true, _) => other.note,
            (_, true) => self.note,
            _ => format!("{}; {}", self.note, other.note),
        };
        OracleReport {
            ok: other.ok,
            checked: self.checked + other.checked,
            witness: other.witness,
            note,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok { "PASS" } else { "FAIL" };
        write!(f, "{verdict} ({} points checked)", self.checked)?;
        if !self.note.is_empty() {
            write!(f, ": {}", self.note)?;
        }
        if let Some(w) = &self.witness {
            write!(f, "; witness {w}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    ok: bool,
    checked: usize,
    note: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportJson {
            ok: self.ok,
            checked: self.checked,
            note: &self.note,
            witness: self.witness.as_ref().map(|w| w.label.as_str()),
        })
        .expect("report serializes")
    }
}

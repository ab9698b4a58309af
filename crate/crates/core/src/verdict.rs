//! Checker outcomes. A verdict either certifies a property (structurally or
//! as sampled evidence), refutes it with a replayable witness, or declares
//! the bounded search inconclusive.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
    Inconclusive,
}

/// Whether a verified verdict is an exact structural decision or seeded
/// sampling evidence. Violations are exact either way: the witness re-fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "samples")]
pub enum Evidence {
    Structural,
    Sampled(u32),
}

/// A named, serialized model element attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Evidence,
    /// Named elements demonstrating a violation (or an inconclusive candidate).
    pub witness: Vec<WitnessEntry>,
    /// Recorded search bound for semi-decidable clauses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    pub message: String,
}

impl Verdict {
    pub fn structural_ok(message: impl Into<String>) -> Self {
        Verdict {
            status: Status::Verified,
            evidence: Evidence::Structural,
            witness: Vec::new(),
            bound: None,
            message: message.into(),
        }
    }

    pub fn sampled_ok(samples: u32, message: impl Into<String>) -> Self {
        Verdict {
            status: Status::Verified,
            evidence: Evidence::Sampled(samples),
            witness: Vec::new(),
            bound: None,
            message: message.into(),
        }
    }

    pub fn violated(evidence: Evidence, message: impl Into<String>) -> Self {
        Verdict {
            status: Status::Violated,
            evidence,
            witness: Vec::new(),
            bound: None,
            message: message.into(),
        }
    }

    pub fn inconclusive(evidence: Evidence, bound: u32, message: impl Into<String>) -> Self {
        Verdict {
            status: Status::Inconclusive,
            evidence,
            witness: Vec::new(),
            bound: Some(bound),
            message: message.into(),
        }
    }

    pub fn with_witness(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.witness.push(WitnessEntry {
            name: name.into(),
            value: value.into(),
        });
        self
    }

    pub fn with_bound(mut self, bound: u32) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Verified => "verified",
            Status::Violated => "violated",
            Status::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status, self.message)?;
        match self.evidence {
            Evidence::Structural => write!(f, " (structural)")?,
            Evidence::Sampled(n) => write!(f, " (sampled, n={n})")?,
        }
        if let Some(b) = self.bound {
            write!(f, " (bound {b})")?;
        }
        for w in &self.witness {
            write!(f, " {}={}", w.name, w.value)?;
        }
        Ok(())
    }
}

/// A verdict labelled with the check that produced it; the unit every
/// aggregated suite reports in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
}

impl NamedVerdict {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        NamedVerdict {
            name: name.into(),
            verdict,
        }
    }
}

impl fmt::Display for NamedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.verdict)
    }
}

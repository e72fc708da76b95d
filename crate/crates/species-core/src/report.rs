//! Check outcomes with machine-readable witnesses.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::object::LabeledSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A counterexample: the object it lives on plus enough encoded pieces
/// (structures, bipartitions, morphisms) to re-check the violation by hand.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Which equation or property was violated.
    pub kind: String,
    /// Display form of the ambient object.
    pub object: String,
    /// Labeled pieces of the counterexample, in canonical encodings.
    pub items: Vec<(String, String)>,
}

impl Witness {
    pub fn new(kind: impl Into<String>, omega: &LabeledSet) -> Self {
        Witness {
            kind: kind.into(),
            object: omega.to_string(),
            items: Vec::new(),
        }
    }

    pub fn item(mut self, label: impl Into<String>, value: impl fmt::Display) -> Self {
        self.items.push((label.into(), value.to_string()));
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub cases_checked: u64,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Merge sub-reports into one (first failure wins, cases are summed).
    pub fn combine(name: impl Into<String>, parts: Vec<CheckReport>) -> CheckReport {
        let mut verdict = Verdict::Pass;
        let mut witness = None;
        let mut cases = 0;
        let mut elapsed = 0;
        for part in parts {
            cases += part.cases_checked;
            elapsed += part.elapsed_ms;
            if part.verdict == Verdict::Fail && witness.is_none() {
                verdict = Verdict::Fail;
                witness = part.witness;
            }
        }
        CheckReport {
            name: name.into(),
            verdict,
            witness,
            cases_checked: cases,
            elapsed_ms: elapsed,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        write!(f, "{:<18} {} ({} cases)", self.name, mark, self.cases_checked)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness [{}] on {}", w.kind, w.object)?;
            for (label, value) in &w.items {
                write!(f, "\n    {label}: {value}")?;
            }
        }
        Ok(())
    }
}

/// Collects cases and timing while a check runs.
pub struct Runner {
    name: String,
    cases: u64,
    start: Instant,
}

impl Runner {
    pub fn new(name: impl Into<String>) -> Self {
        Runner {
            name: name.into(),
            cases: 0,
            start: Instant::now(),
        }
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn cases(&mut self, n: u64) {
        self.cases += n;
    }

    pub fn pass(self) -> CheckReport {
        self.finish(Verdict::Pass, None)
    }

    pub fn fail(self, witness: Witness) -> CheckReport {
        self.finish(Verdict::Fail, Some(witness))
    }

    fn finish(self, verdict: Verdict, witness: Option<Witness>) -> CheckReport {
        CheckReport {
            name: self.name,
            verdict,
            witness,
            cases_checked: self.cases,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::GradedMatrix;
use crate::scalar::Scalar;

/// Names of every verification suite reachable from outside the library.
pub const SUITES: &[&str] = &[
    "classical-relations",
    "q-relations",
    "identities",
    "rq-properties",
    "ybe",
    "rll",
    "l-operator",
    "tilde-t",
    "r2-relations",
    "hopf-r2",
    "r2-negative-control",
    "r1-relations",
    "ohn-subalgebra",
    "r1-hopf",
    "triangularity",
    "twist",
    "cocycle",
    "antipode",
    "disentangle",
    "series-twist",
    "ode",
    "fixtures",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One failed identity, located at its first offending entry when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    /// Every identity examined, passing or not, in evaluation order.
    pub checked: Vec<String>,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    /// Left out of JSON unless requested, so repeated runs serialize identically.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            checked: Vec::new(),
            failures: Vec::new(),
            notes: Vec::new(),
            wall_time_ms: None,
            started: Some(Instant::now()),
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, label: &str, at: Option<(usize, usize)>, residual: impl ToString) {
        self.checked.push(label.to_string());
        self.failures.push(Failure {
            label: label.to_string(),
            row: at.map(|a| a.0),
            col: at.map(|a| a.1),
            residual: residual.to_string(),
        });
        self.status = Status::Fail;
    }

    pub fn pass(&mut self, label: &str) {
        self.checked.push(label.to_string());
    }

    pub fn check(&mut self, label: &str, ok: bool, detail: impl ToString) -> bool {
        if ok {
            self.pass(label);
        } else {
            self.fail(label, None, detail);
        }
        ok
    }

    /// `lhs == rhs` entrywise; the residual recorded is `lhs - rhs` at the first mismatch.
    pub fn check_eq(&mut self, label: &str, lhs: &GradedMatrix, rhs: &GradedMatrix) -> bool {
        if lhs.parity() != rhs.parity() {
            self.fail(label, None, format!("shape {} vs {}", lhs.dim(), rhs.dim()));
            return false;
        }
        match lhs.first_difference(rhs) {
            None => {
                self.pass(label);
                true
            }
            Some((r, c, d)) => {
                self.fail(label, Some((r, c)), d);
                false
            }
        }
    }

    pub fn check_zero(&mut self, label: &str, m: &GradedMatrix) -> bool {
        match m.first_nonzero() {
            None => {
                self.pass(label);
                true
            }
            Some((r, c, x)) => {
                let x: Scalar = x.clone();
                self.fail(label, Some((r, c)), x);
                false
            }
        }
    }

    /// Record a result that could not be computed at all.
    pub fn check_result<T>(&mut self, label: &str, r: Result<T, Error>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let at = match &e {
                    Error::CancellationFailure { row, col, .. } => Some((*row, *col)),
                    _ => None,
                };
                self.fail(label, at, e);
                None
            }
        }
    }

    pub fn note(&mut self, s: impl ToString) {
        self.notes.push(s.to_string());
    }

    /// Fold a sub-report in, prefixing its labels.
    pub fn absorb(&mut self, prefix: &str, o: VerificationReport) {
        for c in o.checked {
            self.checked.push(format!("{prefix}: {c}"));
        }
        for mut f in o.failures {
            f.label = format!("{prefix}: {}", f.label);
            self.failures.push(f);
        }
        for n in o.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
        if !self.failures.is_empty() {
            self.status = Status::Fail;
        }
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started {
            self.wall_time_ms = Some(t.elapsed().as_millis() as u64);
        }
        self
    }

    /// Deterministic JSON (no timing).
    pub fn to_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_ms = None;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json_timed(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Failure labels only.
    pub fn failed_labels(&self) -> Vec<&str> {
        self.failures.iter().map(|f| f.label.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rep_parity;

    #[test]
    fn status_tracks_failures() {
        let i = GradedMatrix::identity(rep_parity(3));
        let mut r = VerificationReport::new("t").param("j", "1/2");
        assert!(r.check_eq("same", &i, &i));
        assert!(r.passed());
        let mut j = i.clone();
        j.set(1, 2, Scalar::h());
        assert!(!r.check_eq("perturbed", &j, &i));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures[0].row, Some(1));
        assert_eq!(r.failures[0].col, Some(2));
        assert_eq!(r.failures[0].residual, "h");
        let a = r.clone().finish().to_json();
        let b = r.finish().to_json();
        assert_eq!(a, b);
        assert!(!a.contains("wall_time"));
    }
}

//! Verification reports shared by every checker.
//!
//! A report records each identity that was evaluated, how many basis
//! instances it covered, and (on failure) the first counterexample in
//! lexicographic order of basis indices.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalars::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// First counterexample of a failed identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub identity: String,
    /// Basis indices (or group element indices) the identity was evaluated at.
    pub indices: Vec<usize>,
    /// Coordinate of the first differing entry, when the sides are tensors.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub position: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Scalar>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Witness {
    pub fn at(indices: &[usize]) -> Self {
        Witness {
            identity: String::new(),
            indices: indices.to_vec(),
            position: Vec::new(),
            lhs: None,
            rhs: None,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn with_values(mut self, position: Vec<usize>, lhs: Scalar, rhs: Scalar) -> Self {
        self.position = position;
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub identity: String,
    pub checked: u64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_identity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, identity: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    /// Total number of identity instances evaluated.
    pub fn instances(&self) -> u64 {
        self.checks.iter().map(|c| c.checked).sum()
    }

    /// Report of a single yes/no fact with no basis witness.
    pub fn single(name: &str, identity: &str, ok: bool, detail: impl Into<String>) -> Self {
        let mut suite = Suite::new(name, true);
        let witness = (!ok).then(|| Witness::at(&[]).with_detail(detail));
        suite.record(identity, 1, witness);
        suite.finish()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.status)?;
        for c in &self.checks {
            writeln!(f, "  {:<40} {:>8} {}", c.identity, c.checked, c.status)?;
        }
        if let Some(w) = &self.witness {
            write!(f, "  witness {} at {:?}", w.identity, w.indices)?;
            if !w.position.is_empty() {
                write!(f, " entry {:?}", w.position)?;
            }
            if let (Some(l), Some(r)) = (&w.lhs, &w.rhs) {
                write!(f, ": lhs = {l}, rhs = {r}")?;
            }
            if !w.detail.is_empty() {
                write!(f, " ({})", w.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates identity checks into a report.
///
/// In the default mode the suite stops recording new identities after the
/// first failure; `full` keeps evaluating everything.
#[derive(Debug)]
pub struct Suite {
    name: String,
    full: bool,
    checks: Vec<CheckRecord>,
    failure: Option<Witness>,
}

impl Suite {
    pub fn new(name: &str, full: bool) -> Self {
        Suite {
            name: name.to_string(),
            full,
            checks: Vec::new(),
            failure: None,
        }
    }

    /// Whether further identities should be evaluated.
    pub fn active(&self) -> bool {
        self.full || self.failure.is_none()
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn record(&mut self, identity: &str, checked: u64, witness: Option<Witness>) {
        self.checks.push(CheckRecord {
            identity: identity.to_string(),
            checked,
            status: Status::from_bool(witness.is_none()),
        });
        if let Some(mut w) = witness {
            w.identity = identity.to_string();
            if self.failure.is_none() {
                self.failure = Some(w);
            }
        }
    }

    /// Evaluates `eval` on every index tuple in `0..dims[0] × 0..dims[1] × …`
    /// and records the lexicographically first failure.
    pub fn tuples<F>(&mut self, identity: &str, dims: &[usize], eval: F)
    where
        F: Fn(&[usize]) -> Option<Witness> + Sync,
    {
        if !self.active() {
            return;
        }
        let (checked, witness) = check_tuples(dims, eval);
        self.record(identity, checked, witness);
    }

    /// Merges a finished sub-report, keeping its checks under a prefix.
    pub fn absorb(&mut self, prefix: &str, report: VerificationReport) {
        for c in report.checks {
            self.checks.push(CheckRecord {
                identity: format!("{prefix}{}", c.identity),
                ..c
            });
        }
        if let Some(mut w) = report.witness {
            w.identity = format!("{prefix}{}", w.identity);
            if self.failure.is_none() {
                self.failure = Some(w);
            }
        }
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            name: self.name,
            status: Status::from_bool(self.failure.is_none()),
            failed_identity: self.failure.as_ref().map(|w| w.identity.clone()),
            witness: self.failure,
            checks: self.checks,
        }
    }
}

/// Exhaustive tuple scan, parallel over the leading index.
///
/// Returns the number of tuples evaluated up to and including the first
/// failure (or all of them) and that failure's witness.
pub fn check_tuples<F>(dims: &[usize], eval: F) -> (u64, Option<Witness>)
where
    F: Fn(&[usize]) -> Option<Witness> + Sync,
{
    let total: u64 = dims.iter().map(|&d| d as u64).product();
    if total == 0 {
        return (0, None);
    }
    if dims.is_empty() {
        return (1, eval(&[]));
    }
    let inner = &dims[1..];
    let scan_row = |first: usize| -> Option<(u64, Witness)> {
        let mut idx = vec![0usize; dims.len()];
        idx[0] = first;
        let mut offset = 0u64;
        loop {
            if let Some(w) = eval(&idx) {
                return Some((offset, w));
            }
            offset += 1;
            // odometer increment on the trailing coordinates
            let mut pos = dims.len();
            loop {
                if pos == 1 {
                    return None;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < inner[pos - 1] {
                    break;
                }
                idx[pos] = 0;
            }
        }
    };
    let per_row: u64 = inner.iter().map(|&d| d as u64).product();
    let found = (0..dims[0])
        .into_par_iter()
        .find_map_first(|first| scan_row(first).map(|(off, w)| (first, off, w)));
    match found {
        None => (total, None),
        Some((first, off, w)) => (first as u64 * per_row + off + 1, Some(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_scan_finds_lexicographic_first() {
        let (n, w) = check_tuples(&[4, 3, 2], |idx| {
            (idx[0] >= 1 && idx[2] == 1).then(|| Witness::at(idx))
        });
        assert_eq!(w.unwrap().indices, vec![1, 0, 1]);
        assert_eq!(n, 6 + 2);
        let (n, w) = check_tuples(&[5, 5], |_| None);
        assert!(w.is_none());
        assert_eq!(n, 25);
    }

    #[test]
    fn suite_stops_after_first_failure() {
        let mut s = Suite::new("demo", false);
        s.tuples("a", &[2], |_| None);
        s.tuples("b", &[2], |i| (i[0] == 1).then(|| Witness::at(i)));
        s.tuples("c", &[2], |i| Some(Witness::at(i)));
        let r = s.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failed_identity.as_deref(), Some("b"));
        assert_eq!(r.checks.len(), 2);

        let mut s = Suite::new("demo", true);
        s.tuples("b", &[2], |i| (i[0] == 1).then(|| Witness::at(i)));
        s.tuples("c", &[2], |i| Some(Witness::at(i)));
        let r = s.finish();
        assert_eq!(r.checks.len(), 2);
        assert_eq!(r.witness.unwrap().identity, "b");
    }
}

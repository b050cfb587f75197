//! Check results and their human and JSON-lines renderings.

use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// One check. `witness` is the evidence for the status: the counterexample
/// of a failure, or the computed value of a passing exact check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
    pub ms: u64,
}

impl Report {
    pub fn pass(check: impl Into<String>, witness: Option<String>) -> Self {
        Self::new(check, Status::Pass, witness)
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(check, Status::Fail, Some(witness.into()))
    }

    pub fn skip(check: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::new(check, Status::Skip, Some(reason.into()))
    }

    fn new(check: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        Self {
            check: check.into(),
            status,
            witness,
            ms: 0,
        }
    }

    /// `pass` with `ok` as the witness when `cond` holds, otherwise `fail`
    /// with `bad`.
    pub fn expect(
        check: impl Into<String>,
        cond: bool,
        ok: impl fmt::Display,
        bad: impl fmt::Display,
    ) -> Self {
        if cond {
            Self::pass(check, Some(ok.to_string()))
        } else {
            Self::fail(check, bad.to_string())
        }
    }

    pub fn timed(check: &str, f: impl FnOnce() -> Report) -> Report {
        let start = Instant::now();
        let mut r = f();
        r.check = check.to_string();
        r.ms = start.elapsed().as_millis() as u64;
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({} ms)", self.status, self.check, self.ms)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

pub fn sort(reports: &mut [Report]) {
    reports.sort_by(|a, b| a.check.cmp(&b.check));
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

pub fn write_human(out: &mut impl Write, reports: &[Report]) -> io::Result<()> {
    for r in reports {
        writeln!(out, "{r}")?;
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip)
    )
}

pub fn write_json_lines(out: &mut impl Write, reports: &[Report]) -> io::Result<()> {
    for r in reports {
        writeln!(out, "{}", r.to_json())?;
    }
    Ok(())
}

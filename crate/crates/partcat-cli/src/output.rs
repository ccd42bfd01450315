//! Output plumbing shared by all verbs: the three emitters and the failure
//! type that drives the process exit code. Text, JSON and CSV are built from
//! the same computed data so the emitters cannot disagree on values.

use clap::ValueEnum;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A rectangular table for the CSV emitter. Fields never contain commas or
/// quotes (partition notation uses "|" and primes, polynomials use spaces),
/// so no quoting layer is needed; this is asserted at emission time.
pub struct Csv {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

pub fn print_csv(table: &Csv) {
    println!("{}", table.header.join(","));
    for row in &table.rows {
        debug_assert_eq!(row.len(), table.header.len());
        for field in row {
            assert!(
                !field.contains(',') && !field.contains('"') && !field.contains('\n'),
                "CSV field needs quoting: {field:?}"
            );
        }
        println!("{}", row.join(","));
    }
}

/// Why a run ends with a nonzero exit code: bad flags or inputs (exit 2),
/// a computation error from the engine (exit 2), or a completed computation
/// whose internal cross-checks disagree (exit 1).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(partcat_core::Error),
    CrossCheck(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::CrossCheck(_) => 1,
            Failure::Usage(_) | Failure::Compute(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Compute(e) => write!(f, "{e}"),
            Failure::CrossCheck(m) => write!(f, "cross-check failed: {m}"),
        }
    }
}

impl From<partcat_core::Error> for Failure {
    fn from(e: partcat_core::Error) -> Self {
        Failure::Compute(e)
    }
}

/// Record of silent invariant checks run alongside a verb; the first failed
/// check aborts with exit code 1 after the report has been printed.
pub struct Checks {
    failed: Option<String>,
}

impl Checks {
    pub fn new() -> Self {
        Checks { failed: None }
    }

    pub fn require(&mut self, ok: bool, label: impl Into<String>) {
        if !ok && self.failed.is_none() {
            self.failed = Some(label.into());
        }
    }

    pub fn finish(self) -> Result<(), Failure> {
        match self.failed {
            None => Ok(()),
            Some(label) => Err(Failure::CrossCheck(label)),
        }
    }
}

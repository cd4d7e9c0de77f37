//! Scenario files, reports and the seeded self-test drivers behind the
//! `abtrace` binary.
//!
//! Exit codes: 0 pass, 1 unequal or failed trial, 2 not transversal,
//! 3 internal invariant failure, 4 input error.

mod report;
mod run;
mod scenario;
mod suites;

pub use report::{Report, Verdict};
pub use run::{run, Options, MAX_LEMMA_DIM, PROBABILISTIC_ROUNDS};
pub use scenario::{Lemma313, ProjectiveAb, Scenario, Selftest, Summand, WeylChar};

use abtrace_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub(crate) fn input(e: Error) -> CliError {
        CliError::Input(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 4,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(_) | Error::Parse { .. } => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

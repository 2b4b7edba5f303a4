//! File formats: lattice JSON, Burmeister CXT, transaction lists, and the
//! DOT / edge-list / trace / stats emitters. [`bench`] runs the benchmark
//! suites behind `hasse bench`.

pub mod bench;
mod cxt;
mod emit;
mod json;
mod transactions;

use thiserror::Error;

use crate::fca::FcaError;
use crate::lattice::LatticeError;
use crate::report::ValidationReport;

pub use cxt::{emit_cxt, parse_cxt};
pub use emit::{emit_dot, emit_edges_json, emit_stats, emit_trace, OpCounts, RunStats};
pub use json::{emit_lattice_json, parse_lattice_json, LatticeFile};
pub use transactions::parse_transactions;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("not a lattice: {0}")]
    Validation(ValidationReport),
    #[error(transparent)]
    Context(#[from] FcaError),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<LatticeError> for FormatError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Invalid(r) => FormatError::Validation(r),
            other => {
                let mut r = ValidationReport::new();
                r.fail("lattice", vec![], other.to_string());
                FormatError::Validation(r)
            }
        }
    }
}

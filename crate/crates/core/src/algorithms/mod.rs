//! Hasse diagram construction.
//!
//! [`generalized_border`] reads each element's upper cover off the minimal
//! joins with the current border. [`generalized_ipred`] replaces the
//! minimality filter with a constant-time test that needs an injective
//! join-homomorphism into a distributive lattice ([`Embedding`]).

mod border_alg;
mod embedding;
mod hasse;
mod ipred;
mod trace;

use thiserror::Error;

use crate::report::ValidationReport;
use crate::traversal::TraversalError;

pub use border_alg::{generalized_border, BorderOptions};
pub use embedding::{
    identity_embedding, label_embedding, meet_irreducible_embedding, meet_irreducibles, validate_embedding, CountedMap,
    Embedding, JoinMap, DISTRIBUTIVITY_EXHAUSTIVE_LIMIT,
};
pub use hasse::HasseDiagram;
pub use ipred::{distributive_cover_test, generalized_ipred, slow_cover_test, IpredOptions};
pub use trace::{Step, StepObserver, Trace, TraceRecord, TraceRecorder};

#[derive(Debug, Error)]
pub enum AlgoError {
    #[error("invalid traversal order: {0}")]
    InvalidOrder(#[from] TraversalError),
    #[error("traversal order has {got} element(s), lattice has {expected}")]
    OrderLength { expected: usize, got: usize },
    #[error("embedding rejected: {0}")]
    EmbeddingInvalid(ValidationReport),
}

/// Result of one diagram construction.
#[derive(Clone, Debug)]
pub struct Construction {
    pub diagram: HasseDiagram,
    /// Largest border size observed during the run.
    pub max_border: usize,
    /// Total number of distinct candidates examined.
    pub candidates: u64,
}

fn check_order<L: crate::lattice::Lattice + ?Sized>(
    l: &L,
    order: &crate::traversal::TopoOrder,
    verify: bool,
) -> Result<(), AlgoError> {
    if order.len() != l.size() {
        return Err(AlgoError::OrderLength {
            expected: l.size(),
            got: order.len(),
        });
    }
    if verify {
        crate::traversal::TopoOrder::new(l, order.as_slice().to_vec())?;
    }
    Ok(())
}

//! Hasse diagram construction for arbitrary finite lattices.
//!
//! The crate provides a small lattice abstraction ([`lattice`]), a zoo of
//! concrete lattices ([`zoo`]), concept lattices of formal contexts ([`fca`]),
//! reverse topological traversals ([`traversal`]), border bookkeeping
//! ([`border`]), the two diagram builders ([`algorithms`]), a brute-force
//! oracle with structural analyses ([`oracle`]) and file formats plus the CLI
//! ([`io`], [`cli`]).
//!
//! ```
//! use hasse::algorithms::{generalized_ipred, meet_irreducible_embedding, IpredOptions};
//! use hasse::traversal::{reverse_topo_sort, Strategy};
//! use hasse::zoo;
//!
//! let lattice = zoo::fixture_fig1a();
//! let order = reverse_topo_sort(&lattice, &Strategy::AboveCount).unwrap();
//! let embedding = meet_irreducible_embedding(&lattice);
//! let run = generalized_ipred(&lattice, &order, &embedding, &IpredOptions::default(), None).unwrap();
//! assert_eq!(run.diagram.len(), 6);
//! ```

pub mod algorithms;
pub mod border;
pub mod cli;
pub mod fca;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod traversal;
pub mod zoo;

pub use algorithms::{Embedding, HasseDiagram};
pub use lattice::{ElementId, JoinSemilattice, Lattice};
pub use report::ValidationReport;

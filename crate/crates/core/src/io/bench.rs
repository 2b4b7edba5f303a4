//! Benchmark suites: `powerset:K`, `divisor:N`, `partition:K` and
//! `random-context:OBJSxATTRS:DENSITY:SEED`, comma separated.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use super::{OpCounts, RunStats};
use crate::algorithms::{
    generalized_border, generalized_ipred, meet_irreducible_embedding, validate_embedding, AlgoError, BorderOptions,
    CountedMap, Embedding, IpredOptions,
};
use crate::fca::{powerset_intent_embedding, random_context, ConceptLattice, FcaError};
use crate::lattice::{Counting, DynLattice, Lattice, LatticeError, OpCounters};
use crate::oracle::width;
use crate::traversal::{reverse_topo_sort, Strategy, TraversalError};
use crate::zoo::{self, Orientation};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("bad suite entry `{0}`")]
    Spec(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Context(#[from] FcaError),
    #[error(transparent)]
    Order(#[from] TraversalError),
    #[error(transparent)]
    Algorithm(#[from] AlgoError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Powerset(u32),
    Divisor(u64),
    Partition(usize),
    RandomContext {
        objects: usize,
        attributes: usize,
        density: f64,
        seed: u64,
    },
}

impl FromStr for Instance {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let bad = || BenchError::Spec(s.to_string());
        let (family, rest) = s.split_once(':').ok_or_else(bad)?;
        match family {
            "powerset" => rest.parse().map(Instance::Powerset).map_err(|_| bad()),
            "divisor" => rest.parse().map(Instance::Divisor).map_err(|_| bad()),
            "partition" => rest.parse().map(Instance::Partition).map_err(|_| bad()),
            "random-context" => {
                let parts: Vec<&str> = rest.split(':').collect();
                let [dims, density, seed] = parts[..] else {
                    return Err(bad());
                };
                let (objects, attributes) = dims.split_once('x').ok_or_else(bad)?;
                let density: f64 = density.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&density) {
                    return Err(bad());
                }
                Ok(Instance::RandomContext {
                    objects: objects.parse().map_err(|_| bad())?,
                    attributes: attributes.parse().map_err(|_| bad())?,
                    density,
                    seed: seed.parse().map_err(|_| bad())?,
                })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Powerset(k) => write!(f, "powerset:{k}"),
            Instance::Divisor(n) => write!(f, "divisor:{n}"),
            Instance::Partition(k) => write!(f, "partition:{k}"),
            Instance::RandomContext {
                objects,
                attributes,
                density,
                seed,
            } => write!(f, "random-context:{objects}x{attributes}:{density}:{seed}"),
        }
    }
}

fn identity_of<L: Lattice + Clone + Send + Sync + 'static>(l: &L) -> Embedding<DynLattice> {
    Embedding::new(Box::new(l.clone()), l.elements().collect())
}

impl Instance {
    /// The lattice with an embedding valid for iPred: identity for the
    /// distributive families, the meet-irreducible embedding for partitions
    /// and the intent embedding for concept lattices.
    pub fn build(&self) -> Result<(DynLattice, Embedding<DynLattice>), BenchError> {
        Ok(match *self {
            Instance::Powerset(k) => {
                let l = zoo::powerset(k, Orientation::Standard)?;
                let emb = identity_of(&l);
                (Box::new(l), emb)
            }
            Instance::Divisor(n) => {
                let l = zoo::divisor(n)?;
                let emb = identity_of(&l);
                (Box::new(l), emb)
            }
            Instance::Partition(k) => {
                let l = zoo::partition(k)?;
                let emb = meet_irreducible_embedding(&l);
                (Box::new(l), emb)
            }
            Instance::RandomContext {
                objects,
                attributes,
                density,
                seed,
            } => {
                let cl = ConceptLattice::new(random_context(objects, attributes, density, seed)?)?;
                let emb = powerset_intent_embedding(&cl).boxed();
                (Box::new(cl), emb)
            }
        })
    }
}

pub fn parse_suite(spec: &str) -> Result<Vec<Instance>, BenchError> {
    spec.split(',').map(|s| s.trim().parse()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub suite: String,
    pub repeat: usize,
    pub runs: Vec<RunStats>,
}

/// Runs Border and iPred `repeat` times on every instance, with operation
/// counters attached. Orders and embeddings are checked once up front so the
/// counted runs contain only the constructions themselves.
pub fn run_suite(spec: &str, repeat: usize) -> Result<BenchReport, BenchError> {
    let instances = parse_suite(spec)?;
    let mut runs = Vec::new();
    for inst in &instances {
        let (l, emb) = inst.build()?;
        let order = reverse_topo_sort(&l, &Strategy::AboveCount)?;
        let report = validate_embedding(&emb, &l);
        if !report.ok() {
            return Err(AlgoError::EmbeddingInvalid(report).into());
        }
        let w = width(&l);
        for _ in 0..repeat {
            let counters = OpCounters::new();
            let counted = Counting::new(&*l, &counters);
            let start = Instant::now();
            let run = generalized_border(&counted, &order, &BorderOptions { verify_order: false }, None)?;
            runs.push(RunStats {
                instance: inst.to_string(),
                algorithm: "border".into(),
                n: l.size(),
                width: w,
                edges: run.diagram.len(),
                counters: OpCounts::from(counters.snapshot()),
                max_border: run.max_border,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            });

            let counters = OpCounters::new();
            let counted = Counting::new(&*l, &counters);
            let map = CountedMap::new(&emb, &counters);
            let opts = IpredOptions {
                verify_order: false,
                unchecked: true,
            };
            let start = Instant::now();
            let run = generalized_ipred(&counted, &order, &map, &opts, None)?;
            runs.push(RunStats {
                instance: inst.to_string(),
                algorithm: "ipred".into(),
                n: l.size(),
                width: w,
                edges: run.diagram.len(),
                counters: OpCounts::from(counters.snapshot()),
                max_border: run.max_border,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    Ok(BenchReport {
        suite: spec.to_string(),
        repeat,
        runs,
    })
}

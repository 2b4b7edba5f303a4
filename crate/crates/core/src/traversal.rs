//! Reverse topological sorts: larger elements first, `top` first and
//! `bottom` last.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lattice::{ElementId, Lattice};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraversalError {
    #[error("sequence is not a permutation of the lattice elements")]
    NotAPermutation,
    #[error("rank key popped `{later}` after `{earlier}` although `{earlier}` < `{later}`")]
    InvalidRankKey { earlier: String, later: String },
    #[error("sequence is not a reverse topological sort: `{earlier}` < `{later}` but appears first")]
    NotReverseTopological { earlier: String, later: String },
}

/// A permutation `x_1..x_n` of the elements in which `x_i <= x_j` implies
/// `j <= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopoOrder(Vec<ElementId>);

impl TopoOrder {
    /// Checked constructor.
    pub fn new<L: Lattice + ?Sized>(l: &L, seq: Vec<ElementId>) -> Result<Self, TraversalError> {
        if let Some((a, b)) = first_violation(l, &seq)? {
            return Err(TraversalError::NotReverseTopological {
                earlier: l.name(a).into_owned(),
                later: l.name(b).into_owned(),
            });
        }
        Ok(TopoOrder(seq))
    }

    /// Wraps a sequence without checking it.
    pub fn new_unchecked(seq: Vec<ElementId>) -> Self {
        TopoOrder(seq)
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementId> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<ElementId> {
        self.0
    }
}

impl<'a> IntoIterator for &'a TopoOrder {
    type Item = &'a ElementId;
    type IntoIter = std::slice::Iter<'a, ElementId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub enum Strategy<'k> {
    /// Ascending by the number of strictly larger elements, ties broken by
    /// name.
    AboveCount,
    /// Heap keyed by a caller-supplied function; smaller keys come first.
    /// The key must strictly decrease along `<`.
    RankKey(&'k dyn Fn(ElementId) -> i64),
    /// Above-count levels with ties shuffled by a seeded generator.
    Random(u64),
}

fn check_permutation(n: usize, seq: &[ElementId]) -> Result<(), TraversalError> {
    if seq.len() != n {
        return Err(TraversalError::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &x in seq {
        if x.0 >= n || std::mem::replace(&mut seen[x.0], true) {
            return Err(TraversalError::NotAPermutation);
        }
    }
    Ok(())
}

fn first_violation<L: Lattice + ?Sized>(
    l: &L,
    seq: &[ElementId],
) -> Result<Option<(ElementId, ElementId)>, TraversalError> {
    check_permutation(l.size(), seq)?;
    for (i, &a) in seq.iter().enumerate() {
        for &b in &seq[i + 1..] {
            if l.leq(a, b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// True iff no earlier element is below a later one. Costs O(n²) `leq`
/// calls.
pub fn verify_reverse_topo<L: Lattice + ?Sized>(l: &L, seq: &[ElementId]) -> Result<bool, TraversalError> {
    Ok(first_violation(l, seq)?.is_none())
}

/// Number of elements strictly above each element.
pub fn above_counts<L: Lattice + ?Sized>(l: &L) -> Vec<usize> {
    let mut counts = vec![0usize; l.size()];
    for x in l.elements() {
        for y in l.elements() {
            if l.lt(x, y) {
                counts[x.0] += 1;
            }
        }
    }
    counts
}

pub fn reverse_topo_sort<L: Lattice + ?Sized>(l: &L, strategy: &Strategy<'_>) -> Result<TopoOrder, TraversalError> {
    match strategy {
        Strategy::AboveCount => {
            let counts = above_counts(l);
            let names: Vec<String> = l.elements().map(|e| l.name(e).into_owned()).collect();
            let mut seq: Vec<ElementId> = l.elements().collect();
            seq.sort_by(|a, b| counts[a.0].cmp(&counts[b.0]).then_with(|| names[a.0].cmp(&names[b.0])));
            Ok(TopoOrder(seq))
        }
        Strategy::Random(seed) => {
            let counts = above_counts(l);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut seq: Vec<ElementId> = l.elements().collect();
            seq.sort_by_key(|e| (counts[e.0], e.0));
            let mut start = 0;
            while start < seq.len() {
                let level = counts[seq[start].0];
                let end = start + seq[start..].iter().take_while(|e| counts[e.0] == level).count();
                seq[start..end].shuffle(&mut rng);
                start = end;
            }
            Ok(TopoOrder(seq))
        }
        Strategy::RankKey(key) => {
            let mut stream = TopoStream::new(l, *key, true);
            let mut seq = Vec::with_capacity(l.size());
            for x in &mut stream {
                seq.push(x?);
            }
            Ok(TopoOrder(seq))
        }
    }
}

/// Heap-backed iterator handing out the next element of a rank-keyed reverse
/// topological sort on demand, without sorting everything up front.
pub struct TopoStream<'a, L: ?Sized> {
    lattice: &'a L,
    heap: BinaryHeap<Reverse<(i64, usize)>>,
    verify: bool,
    popped: Vec<ElementId>,
    failed: bool,
}

impl<'a, L: Lattice + ?Sized> TopoStream<'a, L> {
    pub fn new(lattice: &'a L, key: &dyn Fn(ElementId) -> i64, verify: bool) -> Self {
        let heap = lattice.elements().map(|e| Reverse((key(e), e.0))).collect();
        TopoStream {
            lattice,
            heap,
            verify,
            popped: Vec::new(),
            failed: false,
        }
    }
}

impl<L: Lattice + ?Sized> Iterator for TopoStream<'_, L> {
    type Item = Result<ElementId, TraversalError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let Reverse((_, i)) = self.heap.pop()?;
        let x = ElementId(i);
        if self.verify {
            if let Some(&earlier) = self.popped.iter().find(|&&e| self.lattice.leq(e, x)) {
                self.failed = true;
                return Some(Err(TraversalError::InvalidRankKey {
                    earlier: self.lattice.name(earlier).into_owned(),
                    later: self.lattice.name(x).into_owned(),
                }));
            }
            self.popped.push(x);
        }
        Some(Ok(x))
    }
}

/// Uniformly chosen next element among those whose strict up-set is already
/// emitted; reaches every linear extension of the reversed order. Used for
/// order-independence sweeps.
pub fn random_linear_extension<L: Lattice + ?Sized>(l: &L, seed: u64) -> TopoOrder {
    let n = l.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining = above_counts(l);
    let mut ready: Vec<ElementId> = l.elements().filter(|e| remaining[e.0] == 0).collect();
    let mut seq = Vec::with_capacity(n);
    while !ready.is_empty() {
        let pick = rng.gen_range(0..ready.len());
        let z = ready.swap_remove(pick);
        seq.push(z);
        for x in l.elements() {
            if l.lt(x, z) {
                remaining[x.0] -= 1;
                if remaining[x.0] == 0 {
                    ready.push(x);
                }
            }
        }
    }
    TopoOrder(seq)
}

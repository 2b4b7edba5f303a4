//! The finite-lattice abstraction every other module is written against.
//!
//! Elements are dense indices ([`ElementId`]); names only matter at I/O
//! boundaries. Implementations are immutable after construction, so a
//! `&L` can be shared freely across threads as long as `L: Sync`.

use std::borrow::Cow;
use std::ops::Range;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::ValidationReport;

mod counting;
mod explicit;

pub use counting::{CounterSnapshot, Counting, OpCounters};
pub use explicit::{complete_with_bottom, validate_lattice, ExplicitLattice, LatticeError, RelationKind, TABLE_LIMIT};

/// Dense element index, stable for the lifetime of the lattice it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i)
    }
}

pub type Elements = std::iter::Map<Range<usize>, fn(usize) -> ElementId>;

pub trait JoinSemilattice {
    fn size(&self) -> usize;
    fn leq(&self, x: ElementId, y: ElementId) -> bool;
    fn join(&self, x: ElementId, y: ElementId) -> ElementId;
    fn name(&self, x: ElementId) -> Cow<'_, str>;

    fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    fn elements(&self) -> Elements {
        (0..self.size()).map(ElementId as fn(usize) -> ElementId)
    }

    /// Linear scan by display name.
    fn find(&self, name: &str) -> Option<ElementId> {
        self.elements().find(|&e| self.name(e) == name)
    }
}

pub trait Lattice: JoinSemilattice {
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId;
    fn top(&self) -> ElementId;
    fn bottom(&self) -> ElementId;

    /// Structural knowledge about distributivity, when the family guarantees
    /// it. `None` means "unknown, check it".
    fn known_distributive(&self) -> Option<bool> {
        None
    }
}

/// Boxed lattice used wherever the concrete family is chosen at runtime.
pub type DynLattice = Box<dyn Lattice + Send + Sync>;

macro_rules! forward_lattice {
    ($($ptr:ty),*) => {$(
        impl<L: JoinSemilattice + ?Sized> JoinSemilattice for $ptr {
            fn size(&self) -> usize { (**self).size() }
            fn leq(&self, x: ElementId, y: ElementId) -> bool { (**self).leq(x, y) }
            fn join(&self, x: ElementId, y: ElementId) -> ElementId { (**self).join(x, y) }
            fn name(&self, x: ElementId) -> Cow<'_, str> { (**self).name(x) }
            fn find(&self, name: &str) -> Option<ElementId> { (**self).find(name) }
        }
        impl<L: Lattice + ?Sized> Lattice for $ptr {
            fn meet(&self, x: ElementId, y: ElementId) -> ElementId { (**self).meet(x, y) }
            fn top(&self) -> ElementId { (**self).top() }
            fn bottom(&self) -> ElementId { (**self).bottom() }
            fn known_distributive(&self) -> Option<bool> { (**self).known_distributive() }
        }
    )*};
}

forward_lattice!(&L, Box<L>, Arc<L>);

/// Meet computed from joins alone: the join of every common lower bound of
/// `xs`. Returns `None` when `xs` has no common lower bound, which cannot
/// happen in a semilattice with a bottom element.
pub fn meet_via_join<S: JoinSemilattice + ?Sized>(s: &S, xs: &[ElementId]) -> Option<ElementId> {
    s.elements()
        .filter(|&y| xs.iter().all(|&x| s.leq(y, x)))
        .reduce(|acc, y| s.join(acc, y))
}

/// Meet of an arbitrary finite set; the empty meet is `top`.
pub fn meet_all<L: Lattice + ?Sized>(l: &L, xs: impl IntoIterator<Item = ElementId>) -> ElementId {
    xs.into_iter().fold(l.top(), |acc, x| l.meet(acc, x))
}

/// Join of an arbitrary finite set; the empty join is `bottom`.
pub fn join_all<L: Lattice + ?Sized>(l: &L, xs: impl IntoIterator<Item = ElementId>) -> ElementId {
    xs.into_iter().fold(l.bottom(), |acc, x| l.join(acc, x))
}

pub(crate) fn names<L: JoinSemilattice + ?Sized>(l: &L, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| l.name(x).into_owned()).collect()
}

/// Lattices up to this size get exhaustive pair/triple sweeps in
/// [`check_axioms`]; larger ones are sampled.
pub const EXHAUSTIVE_LIMIT: usize = 64;

/// Default number of random samples used for lattices above
/// [`EXHAUSTIVE_LIMIT`].
pub const DEFAULT_SAMPLES: usize = 10_000;

/// Checks the lattice axioms: partial order laws, join/meet as least upper and
/// greatest lower bounds, absorption, commutativity, associativity,
/// idempotence, the order/join/meet consistency and the bounds.
pub fn check_axioms<L: Lattice + ?Sized>(l: &L, samples: usize, seed: u64) -> ValidationReport {
    let n = l.size();
    let mut report = ValidationReport::new();
    if n == 0 {
        report.fail("nonempty", vec![], "lattice has no elements");
        return report;
    }
    let (top, bot) = (l.top(), l.bottom());
    let nm = |xs: &[ElementId]| names(l, xs);

    let check_pair = |x: ElementId, y: ElementId, report: &mut ValidationReport| {
        let (j, m) = (l.join(x, y), l.meet(x, y));
        if x == y && !l.leq(x, x) {
            report.fail("reflexivity", nm(&[x]), "");
        }
        if x != y && l.leq(x, y) && l.leq(y, x) {
            report.fail("antisymmetry", nm(&[x, y]), "");
        }
        if !(l.leq(x, j) && l.leq(y, j)) {
            report.fail("join-upper-bound", nm(&[x, y]), format!("join = {}", l.name(j)));
        }
        if !(l.leq(m, x) && l.leq(m, y)) {
            report.fail("meet-lower-bound", nm(&[x, y]), format!("meet = {}", l.name(m)));
        }
        if j != l.join(y, x) {
            report.fail("join-commutativity", nm(&[x, y]), "");
        }
        if m != l.meet(y, x) {
            report.fail("meet-commutativity", nm(&[x, y]), "");
        }
        if l.meet(x, j) != x || l.join(x, m) != x {
            report.fail("absorption", nm(&[x, y]), "");
        }
        let le = l.leq(x, y);
        if le != (j == y) || le != (m == x) {
            report.fail(
                "order-consistency",
                nm(&[x, y]),
                "x <= y, x v y = y, x ^ y = x disagree",
            );
        }
        if x == y && (j != x || m != x) {
            report.fail("idempotence", nm(&[x]), "");
        }
        if x == y && !(l.leq(x, top) && l.leq(bot, x)) {
            report.fail("bounds", nm(&[x]), "");
        }
    };
    let check_triple = |x: ElementId, y: ElementId, z: ElementId, report: &mut ValidationReport| {
        if l.leq(x, y) && l.leq(y, z) && !l.leq(x, z) {
            report.fail("transitivity", nm(&[x, y, z]), "");
        }
        // least upper bound / greatest lower bound
        if l.leq(x, z) && l.leq(y, z) && !l.leq(l.join(x, y), z) {
            report.fail("join-least", nm(&[x, y, z]), "");
        }
        if l.leq(z, x) && l.leq(z, y) && !l.leq(z, l.meet(x, y)) {
            report.fail("meet-greatest", nm(&[x, y, z]), "");
        }
        if l.join(l.join(x, y), z) != l.join(x, l.join(y, z)) {
            report.fail("join-associativity", nm(&[x, y, z]), "");
        }
        if l.meet(l.meet(x, y), z) != l.meet(x, l.meet(y, z)) {
            report.fail("meet-associativity", nm(&[x, y, z]), "");
        }
    };

    if n <= EXHAUSTIVE_LIMIT {
        for x in l.elements() {
            for y in l.elements() {
                check_pair(x, y, &mut report);
                for z in l.elements() {
                    check_triple(x, y, z, &mut report);
                    if report.failures.len() > 16 {
                        return report;
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for x in l.elements() {
            check_pair(x, x, &mut report);
        }
        for _ in 0..samples {
            let x = ElementId(rng.gen_range(0..n));
            let y = ElementId(rng.gen_range(0..n));
            let z = ElementId(rng.gen_range(0..n));
            check_pair(x, y, &mut report);
            check_triple(x, y, z, &mut report);
            // bias a third of the samples towards comparable triples so the
            // order-conditional laws are exercised
            let (a, b) = (l.meet(x, y), l.join(y, z));
            check_triple(a, y, b, &mut report);
            if report.failures.len() > 16 {
                return report;
            }
        }
        report.note("sampled", vec![], format!("{samples} random samples, seed {seed}"));
    }
    report
}

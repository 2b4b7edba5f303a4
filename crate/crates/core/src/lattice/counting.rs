use std::borrow::Cow;
use std::cell::Cell;

use serde::Serialize;

use super::{ElementId, JoinSemilattice, Lattice};

/// Operation counters for one instrumented run. Single-threaded by design
/// (`Cell`), so a fresh set is created per run.
#[derive(Debug, Default)]
pub struct OpCounters {
    leq: Cell<u64>,
    join: Cell<u64>,
    meet: Cell<u64>,
    f: Cell<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CounterSnapshot {
    pub leq_calls: u64,
    pub join_calls: u64,
    pub meet_calls: u64,
    pub f_calls: u64,
}

impl std::ops::Add for CounterSnapshot {
    type Output = CounterSnapshot;

    fn add(self, o: CounterSnapshot) -> CounterSnapshot {
        CounterSnapshot {
            leq_calls: self.leq_calls + o.leq_calls,
            join_calls: self.join_calls + o.join_calls,
            meet_calls: self.meet_calls + o.meet_calls,
            f_calls: self.f_calls + o.f_calls,
        }
    }
}

impl OpCounters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            leq_calls: self.leq.get(),
            join_calls: self.join.get(),
            meet_calls: self.meet.get(),
            f_calls: self.f.get(),
        }
    }

    pub fn reset(&self) {
        self.leq.set(0);
        self.join.set(0);
        self.meet.set(0);
        self.f.set(0);
    }

    #[inline]
    pub fn bump_f(&self) {
        self.f.set(self.f.get() + 1);
    }
}

#[inline]
fn bump(c: &Cell<u64>) {
    c.set(c.get() + 1);
}

/// Wraps any lattice and counts `leq`, `join` and `meet` calls into an
/// [`OpCounters`]. Production code paths never pay for this.
pub struct Counting<'a, L: ?Sized> {
    inner: &'a L,
    counters: &'a OpCounters,
}

impl<'a, L: ?Sized> Counting<'a, L> {
    pub fn new(inner: &'a L, counters: &'a OpCounters) -> Self {
        Self { inner, counters }
    }

    pub fn counters(&self) -> &'a OpCounters {
        self.counters
    }
}

impl<L: JoinSemilattice + ?Sized> JoinSemilattice for Counting<'_, L> {
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        bump(&self.counters.leq);
        self.inner.leq(x, y)
    }

    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        bump(&self.counters.join);
        self.inner.join(x, y)
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        self.inner.name(x)
    }

    fn find(&self, name: &str) -> Option<ElementId> {
        self.inner.find(name)
    }
}

impl<L: Lattice + ?Sized> Lattice for Counting<'_, L> {
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        bump(&self.counters.meet);
        self.inner.meet(x, y)
    }

    fn top(&self) -> ElementId {
        self.inner.top()
    }

    fn bottom(&self) -> ElementId {
        self.inner.bottom()
    }

    fn known_distributive(&self) -> Option<bool> {
        self.inner.known_distributive()
    }
}

//! Borders: the element sets carried along a reverse topological traversal,
//! from which upper covers are read off as minimal joins.

use fixedbitset::FixedBitSet;

use crate::lattice::{ElementId, Lattice};

const ABSENT: usize = usize::MAX;

/// Insertion-ordered element set with O(1) membership and amortized O(1)
/// removal. Removed slots are tombstoned and compacted lazily so iteration
/// order stays the insertion order.
#[derive(Clone, Debug)]
pub struct Border {
    slots: Vec<ElementId>,
    live_slot: FixedBitSet,
    pos: Vec<usize>,
    live: usize,
}

impl Border {
    pub fn new(universe: usize) -> Self {
        Border {
            slots: Vec::new(),
            live_slot: FixedBitSet::new(),
            pos: vec![ABSENT; universe],
            live: 0,
        }
    }

    pub fn from_elements(universe: usize, xs: impl IntoIterator<Item = ElementId>) -> Self {
        let mut b = Border::new(universe);
        for x in xs {
            b.insert(x);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.pos[x.0] != ABSENT
    }

    pub fn insert(&mut self, x: ElementId) {
        if self.contains(x) {
            return;
        }
        self.pos[x.0] = self.slots.len();
        self.slots.push(x);
        self.live_slot.grow(self.slots.len());
        self.live_slot.insert(self.slots.len() - 1);
        self.live += 1;
    }

    /// No-op for non-members.
    pub fn remove(&mut self, x: ElementId) {
        let p = self.pos[x.0];
        if p == ABSENT {
            return;
        }
        self.pos[x.0] = ABSENT;
        self.live_slot.set(p, false);
        self.live -= 1;
        if self.slots.len() > 32 && self.live * 2 < self.slots.len() {
            self.compact();
        }
    }

    fn compact(&mut self) {
        let live: Vec<ElementId> = self.iter().collect();
        self.slots.clear();
        self.live_slot.clear();
        for (i, &x) in live.iter().enumerate() {
            self.pos[x.0] = i;
        }
        self.live_slot.grow(live.len());
        self.live_slot.insert_range(..live.len());
        self.slots = live;
    }

    /// Members in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.live_slot.ones().map(move |i| self.slots[i])
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    /// Members sorted by element index.
    pub fn sorted(&self) -> Vec<ElementId> {
        let mut v = self.to_vec();
        v.sort();
        v
    }

    /// In-place standard step: `B ∪ {x} − cover`.
    pub fn advance(&mut self, x: ElementId, cover: &[ElementId]) {
        self.insert(x);
        for &z in cover {
            self.remove(z);
        }
    }
}

impl PartialEq for Border {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

/// `B ∪ {x} − cover`, as a new border.
pub fn standard_step(b: &Border, x: ElementId, cover: &[ElementId]) -> Border {
    let mut next = b.clone();
    next.advance(x, cover);
    next
}

/// `b` is a border for `x` given its upper cover `uc`: nothing in `b` is
/// below `x`, and every upper cover dominates some member of `b`.
pub fn is_border<L: Lattice + ?Sized>(l: &L, b: &[ElementId], x: ElementId, uc: &[ElementId]) -> bool {
    b.iter().all(|&y| !l.leq(y, x)) && uc.iter().all(|&z| b.iter().any(|&y| l.leq(y, z)))
}

/// Antichain test.
pub fn is_proper<L: Lattice + ?Sized>(l: &L, b: &[ElementId]) -> bool {
    b.iter()
        .enumerate()
        .all(|(i, &p)| b[i + 1..].iter().all(|&q| !l.leq(p, q) && !l.leq(q, p)))
}

/// Elements of `s` with nothing strictly below them in `s`; input order is
/// kept. `s` is expected to be duplicate-free.
pub fn minimals<L: Lattice + ?Sized>(l: &L, s: &[ElementId]) -> Vec<ElementId> {
    s.iter()
        .copied()
        .filter(|&a| !s.iter().any(|&b| b != a && l.leq(b, a)))
        .collect()
}

/// `{x ∨ y : y ∈ b}` without duplicates, in the iteration order of `b`.
pub fn candidates<L: Lattice + ?Sized>(
    l: &L,
    x: ElementId,
    b: impl IntoIterator<Item = ElementId>,
    seen: &mut FixedBitSet,
) -> Vec<ElementId> {
    let mut out = Vec::new();
    for y in b {
        let z = l.join(x, y);
        if !seen.put(z.0) {
            out.push(z);
        }
    }
    for z in &out {
        seen.set(z.0, false);
    }
    out
}

/// Upper cover of `x` read off a border for `x`: the minimal elements among
/// the joins of `x` with the border.
pub fn cover_from_border<L: Lattice + ?Sized>(l: &L, x: ElementId, b: &[ElementId]) -> Vec<ElementId> {
    let mut seen = FixedBitSet::with_capacity(l.size());
    let cand = candidates(l, x, b.iter().copied(), &mut seen);
    minimals(l, &cand)
}

//! Concrete lattice families: the three small fixtures plus powersets,
//! divisor lattices, partition lattices and chains.

use std::borrow::Cow;
use std::collections::HashMap;
use std::sync::Mutex;

use fixedbitset::FixedBitSet;

use crate::lattice::{ElementId, ExplicitLattice, JoinSemilattice, Lattice, LatticeError};

fn explicit(names: &[&str], covers: &[(&str, &str)]) -> ExplicitLattice {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    ExplicitLattice::from_relation(&names, covers).expect("fixture is a lattice")
}

/// M3: `top`, three pairwise incomparable atoms `1`,`2`,`3`, and `bot`.
pub fn fixture_fig1a() -> ExplicitLattice {
    explicit(
        &["top", "1", "2", "3", "bot"],
        &[
            ("1", "top"),
            ("2", "top"),
            ("3", "top"),
            ("bot", "1"),
            ("bot", "2"),
            ("bot", "3"),
        ],
    )
}

/// `4` below `1` and `2`; `3` only below `top`.
pub fn fixture_fig1b() -> ExplicitLattice {
    explicit(
        &["top", "1", "2", "3", "4", "bot"],
        &[
            ("1", "top"),
            ("2", "top"),
            ("3", "top"),
            ("4", "1"),
            ("4", "2"),
            ("bot", "4"),
            ("bot", "3"),
        ],
    )
}

/// A six-element distributive lattice: `top` over `1`,`2`; `1`,`2` over `4`;
/// `2` over `3`; `4`,`3` over `bot`.
pub fn fixture_fig2() -> ExplicitLattice {
    explicit(
        &["top", "1", "2", "3", "4", "bot"],
        &[
            ("1", "top"),
            ("2", "top"),
            ("4", "1"),
            ("4", "2"),
            ("3", "2"),
            ("bot", "4"),
            ("bot", "3"),
        ],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `<=` is inclusion, join is union.
    Standard,
    /// `<=` is reverse inclusion, join is intersection.
    Reversed,
}

pub const MAX_POWERSET_ATTRS: u32 = 20;
pub const MAX_DIVISOR: u64 = 1_000_000;
pub const MAX_PARTITION_SIZE: usize = 6;

/// Powerset of `k` items; elements are the subset bitmasks themselves.
#[derive(Clone, Debug)]
pub struct PowersetLattice {
    k: u32,
    orientation: Orientation,
    labels: Vec<String>,
    full: u64,
}

pub fn powerset(k: u32, orientation: Orientation) -> Result<PowersetLattice, LatticeError> {
    if k > MAX_POWERSET_ATTRS {
        return Err(LatticeError::ParameterTooLarge {
            what: "powerset size",
            value: k as u64,
            max: MAX_POWERSET_ATTRS as u64,
        });
    }
    Ok(PowersetLattice::over(
        (0..k).map(|i| i.to_string()).collect(),
        orientation,
    ))
}

impl PowersetLattice {
    /// Powerset over labelled items, up to 63 of them. Meant as an embedding
    /// codomain, so it is never enumerated.
    pub fn over(labels: Vec<String>, orientation: Orientation) -> Self {
        let k = labels.len() as u32;
        assert!(k <= 63, "mask-indexed powerset supports at most 63 items");
        let full = if k == 0 { 0 } else { u64::MAX >> (64 - k) };
        PowersetLattice {
            k,
            orientation,
            labels,
            full,
        }
    }

    pub fn items(&self) -> u32 {
        self.k
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn mask(x: ElementId) -> u64 {
        x.0 as u64
    }
}

fn set_name(labels: &[String], members: impl Iterator<Item = usize>) -> String {
    let parts: Vec<&str> = members.map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

fn parse_set_name(labels: &[String], name: &str) -> Option<Vec<usize>> {
    let inner = name.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| labels.iter().position(|l| l == tok))
        .collect()
}

impl JoinSemilattice for PowersetLattice {
    fn size(&self) -> usize {
        1usize << self.k
    }

    #[inline]
    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        let (a, b) = (x.0 as u64, y.0 as u64);
        match self.orientation {
            Orientation::Standard => a & b == a,
            Orientation::Reversed => a & b == b,
        }
    }

    #[inline]
    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        match self.orientation {
            Orientation::Standard => ElementId(x.0 | y.0),
            Orientation::Reversed => ElementId(x.0 & y.0),
        }
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        let m = x.0 as u64;
        Cow::Owned(set_name(
            &self.labels,
            (0..self.k as usize).filter(|&i| m >> i & 1 == 1),
        ))
    }

    fn find(&self, name: &str) -> Option<ElementId> {
        let members = parse_set_name(&self.labels, name)?;
        Some(ElementId(members.into_iter().fold(0usize, |m, i| m | 1 << i)))
    }
}

impl Lattice for PowersetLattice {
    #[inline]
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        match self.orientation {
            Orientation::Standard => ElementId(x.0 & y.0),
            Orientation::Reversed => ElementId(x.0 | y.0),
        }
    }

    fn top(&self) -> ElementId {
        match self.orientation {
            Orientation::Standard => ElementId(self.full as usize),
            Orientation::Reversed => ElementId(0),
        }
    }

    fn bottom(&self) -> ElementId {
        match self.orientation {
            Orientation::Standard => ElementId(0),
            Orientation::Reversed => ElementId(self.full as usize),
        }
    }

    fn known_distributive(&self) -> Option<bool> {
        Some(true)
    }
}

/// Reversed powerset over any number of items (`<=` is `⊇`, join is `∩`).
/// Sets are interned on first sight, so element ids reflect query order;
/// `top` (the empty set) is always id 0 and `bottom` (all items) id 1.
pub struct SetLattice {
    labels: Vec<String>,
    interner: Mutex<Interner>,
}

#[derive(Default)]
struct Interner {
    sets: Vec<FixedBitSet>,
    index: HashMap<FixedBitSet, usize>,
}

impl Interner {
    fn intern(&mut self, s: FixedBitSet) -> usize {
        if let Some(&i) = self.index.get(&s) {
            return i;
        }
        let i = self.sets.len();
        self.sets.push(s.clone());
        self.index.insert(s, i);
        i
    }
}

impl SetLattice {
    pub fn new(labels: Vec<String>) -> Self {
        let k = labels.len();
        let mut interner = Interner::default();
        interner.intern(FixedBitSet::with_capacity(k));
        let mut full = FixedBitSet::with_capacity(k);
        full.insert_range(..);
        interner.intern(full);
        SetLattice {
            labels,
            interner: Mutex::new(interner),
        }
    }

    pub fn intern(&self, members: impl IntoIterator<Item = usize>) -> ElementId {
        let mut s = FixedBitSet::with_capacity(self.labels.len());
        for m in members {
            s.insert(m);
        }
        ElementId(self.interner.lock().unwrap().intern(s))
    }

    pub fn members(&self, x: ElementId) -> Vec<usize> {
        self.interner.lock().unwrap().sets[x.0].ones().collect()
    }

    fn combine(&self, x: ElementId, y: ElementId, union: bool) -> ElementId {
        let mut g = self.interner.lock().unwrap();
        let mut s = g.sets[x.0].clone();
        if union {
            s.union_with(&g.sets[y.0]);
        } else {
            s.intersect_with(&g.sets[y.0]);
        }
        ElementId(g.intern(s))
    }
}

impl JoinSemilattice for SetLattice {
    fn size(&self) -> usize {
        1usize.checked_shl(self.labels.len() as u32).unwrap_or(usize::MAX)
    }

    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        let g = self.interner.lock().unwrap();
        g.sets[y.0].is_subset(&g.sets[x.0])
    }

    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        self.combine(x, y, false)
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        Cow::Owned(set_name(&self.labels, self.members(x).into_iter()))
    }

    fn find(&self, name: &str) -> Option<ElementId> {
        parse_set_name(&self.labels, name).map(|m| self.intern(m))
    }
}

impl Lattice for SetLattice {
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.combine(x, y, true)
    }

    fn top(&self) -> ElementId {
        ElementId(0)
    }

    fn bottom(&self) -> ElementId {
        ElementId(1)
    }

    fn known_distributive(&self) -> Option<bool> {
        Some(true)
    }
}

/// Divisors of `n` ordered by divisibility.
#[derive(Clone, Debug)]
pub struct DivisorLattice {
    divisors: Vec<u64>,
}

pub fn divisor(n: u64) -> Result<DivisorLattice, LatticeError> {
    if n == 0 || n > MAX_DIVISOR {
        return Err(LatticeError::ParameterTooLarge {
            what: "divisor lattice argument",
            value: n,
            max: MAX_DIVISOR,
        });
    }
    let mut divisors: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let big: Vec<u64> = divisors.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    divisors.extend(big);
    Ok(DivisorLattice { divisors })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl DivisorLattice {
    pub fn value(&self, x: ElementId) -> u64 {
        self.divisors[x.0]
    }

    fn id(&self, v: u64) -> ElementId {
        ElementId(self.divisors.binary_search(&v).expect("divisor of n"))
    }
}

impl JoinSemilattice for DivisorLattice {
    fn size(&self) -> usize {
        self.divisors.len()
    }

    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.value(y).is_multiple_of(self.value(x))
    }

    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        let (a, b) = (self.value(x), self.value(y));
        self.id(a / gcd(a, b) * b)
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        Cow::Owned(self.value(x).to_string())
    }

    fn find(&self, name: &str) -> Option<ElementId> {
        let v: u64 = name.parse().ok()?;
        self.divisors.binary_search(&v).ok().map(ElementId)
    }
}

impl Lattice for DivisorLattice {
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.id(gcd(self.value(x), self.value(y)))
    }

    fn top(&self) -> ElementId {
        ElementId(self.divisors.len() - 1)
    }

    fn bottom(&self) -> ElementId {
        ElementId(0)
    }

    fn known_distributive(&self) -> Option<bool> {
        Some(true)
    }
}

/// Set partitions of `{1..k}` ordered by refinement (finer below coarser).
/// Partitions are stored as restricted growth strings.
#[derive(Clone, Debug)]
pub struct PartitionLattice {
    k: usize,
    parts: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

pub fn partition(k: usize) -> Result<PartitionLattice, LatticeError> {
    if k > MAX_PARTITION_SIZE {
        return Err(LatticeError::ParameterTooLarge {
            what: "partition ground set size",
            value: k as u64,
            max: MAX_PARTITION_SIZE as u64,
        });
    }
    fn grow(prefix: &mut Vec<u8>, max: u8, k: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            if prefix.is_empty() && b > 0 {
                break;
            }
            prefix.push(b);
            grow(prefix, max.max(b), k, out);
            prefix.pop();
        }
    }
    let mut parts = Vec::new();
    grow(&mut Vec::with_capacity(k), 0, k, &mut parts);
    let index = parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    Ok(PartitionLattice { k, parts, index })
}

/// Relabels block ids into restricted-growth form.
fn canonical(labels: impl Iterator<Item = usize>) -> Vec<u8> {
    let mut seen: Vec<usize> = Vec::new();
    labels
        .map(|l| match seen.iter().position(|&s| s == l) {
            Some(p) => p as u8,
            None => {
                seen.push(l);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

impl PartitionLattice {
    pub fn blocks(&self, x: ElementId) -> &[u8] {
        &self.parts[x.0]
    }

    fn id(&self, rgs: &[u8]) -> ElementId {
        ElementId(self.index[rgs])
    }
}

impl JoinSemilattice for PartitionLattice {
    fn size(&self) -> usize {
        self.parts.len()
    }

    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        let (a, b) = (&self.parts[x.0], &self.parts[y.0]);
        (0..self.k).all(|i| (i + 1..self.k).all(|j| a[i] != a[j] || b[i] == b[j]))
    }

    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        let (a, b) = (&self.parts[x.0], &self.parts[y.0]);
        let mut parent: Vec<usize> = (0..self.k).collect();
        for blocks in [a, b] {
            let mut first = [usize::MAX; MAX_PARTITION_SIZE];
            for i in 0..self.k {
                let f = &mut first[blocks[i] as usize];
                if *f == usize::MAX {
                    *f = i;
                } else {
                    let (ri, rf) = (find_root(&mut parent, i), find_root(&mut parent, *f));
                    parent[ri] = rf;
                }
            }
        }
        let roots: Vec<usize> = (0..self.k).map(|i| find_root(&mut parent, i)).collect();
        self.id(&canonical(roots.into_iter()))
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        if self.k == 0 {
            return Cow::Borrowed("{}");
        }
        let p = &self.parts[x.0];
        let nblocks = *p.iter().max().unwrap() as usize + 1;
        let blocks: Vec<String> = (0..nblocks)
            .map(|b| {
                (0..self.k)
                    .filter(|&i| p[i] as usize == b)
                    .map(|i| char::from(b'1' + i as u8))
                    .collect()
            })
            .collect();
        Cow::Owned(blocks.join("|"))
    }
}

impl Lattice for PartitionLattice {
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        let (a, b) = (&self.parts[x.0], &self.parts[y.0]);
        self.id(&canonical((0..self.k).map(|i| a[i] as usize * 16 + b[i] as usize)))
    }

    fn top(&self) -> ElementId {
        ElementId(0)
    }

    fn bottom(&self) -> ElementId {
        ElementId(self.parts.len() - 1)
    }
}

/// Chain `c0 < c1 < ... < c(n-1)`.
#[derive(Clone, Debug)]
pub struct ChainLattice {
    n: usize,
}

pub fn chain(n: usize) -> ChainLattice {
    assert!(n >= 1, "a chain needs at least one element");
    ChainLattice { n }
}

impl JoinSemilattice for ChainLattice {
    fn size(&self) -> usize {
        self.n
    }

    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        x.0 <= y.0
    }

    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        x.max(y)
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        Cow::Owned(format!("c{}", x.0))
    }
}

impl Lattice for ChainLattice {
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        x.min(y)
    }

    fn top(&self) -> ElementId {
        ElementId(self.n - 1)
    }

    fn bottom(&self) -> ElementId {
        ElementId(0)
    }

    fn known_distributive(&self) -> Option<bool> {
        Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{check_axioms, DEFAULT_SAMPLES};
    use crate::oracle::{is_distributive, oracle_hasse, width};

    fn id(l: &impl JoinSemilattice, name: &str) -> ElementId {
        l.find(name).unwrap()
    }

    #[test]
    fn fixture_operations() {
        let a = fixture_fig1a();
        assert_eq!(a.join(id(&a, "1"), id(&a, "2")), a.top());
        assert_eq!(a.meet(id(&a, "1"), id(&a, "2")), a.bottom());
        let f2 = fixture_fig2();
        assert_eq!(f2.join(id(&f2, "3"), id(&f2, "4")), id(&f2, "2"));
        let b = fixture_fig1b();
        assert_eq!(b.meet(id(&b, "1"), id(&b, "2")), id(&b, "4"));
    }

    #[test]
    fn powerset_sizes_and_width() {
        let p0 = powerset(0, Orientation::Standard).unwrap();
        assert_eq!(p0.size(), 1);
        assert_eq!(p0.top(), p0.bottom());
        let p3 = powerset(3, Orientation::Standard).unwrap();
        assert_eq!(p3.size(), 8);
        assert_eq!(oracle_hasse(&p3).len(), 12);
        assert_eq!(width(&powerset(5, Orientation::Standard).unwrap()), 10);
        assert!(powerset(21, Orientation::Standard).is_err());
    }

    #[test]
    fn powerset_names_round_trip() {
        let p = powerset(4, Orientation::Reversed).unwrap();
        for x in p.elements() {
            assert_eq!(p.find(&p.name(x)), Some(x));
        }
        assert_eq!(p.name(ElementId(0b0101)), "{0,2}");
    }

    #[test]
    fn divisor_and_partition_sizes() {
        let d = divisor(12).unwrap();
        let vals: Vec<u64> = d.elements().map(|e| d.value(e)).collect();
        assert_eq!(vals, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(oracle_hasse(&d).len(), 7);
        assert_eq!(divisor(1).unwrap().size(), 1);
        assert_eq!(divisor(36).unwrap().size(), 9);
        assert!(divisor(1_000_001).is_err());
        assert!(divisor(0).is_err());

        let p3 = partition(3).unwrap();
        assert_eq!(p3.size(), 5);
        assert_eq!(oracle_hasse(&p3).len(), 6);
        // Bell numbers
        let sizes: Vec<usize> = (0..=6).map(|k| partition(k).unwrap().size()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 5, 15, 52, 203]);
        assert!(partition(7).is_err());
    }

    #[test]
    fn partition_names_and_ops() {
        let p = partition(3).unwrap();
        assert_eq!(p.name(p.top()), "123");
        assert_eq!(p.name(p.bottom()), "1|2|3");
        let a = p.elements().find(|&e| p.name(e) == "12|3").unwrap();
        let b = p.elements().find(|&e| p.name(e) == "13|2").unwrap();
        assert_eq!(p.join(a, b), p.top());
        assert_eq!(p.meet(a, b), p.bottom());
    }

    #[test]
    fn zoo_axioms() {
        assert!(check_axioms(&powerset(4, Orientation::Standard).unwrap(), 0, 0).ok());
        assert!(check_axioms(&powerset(4, Orientation::Reversed).unwrap(), 0, 0).ok());
        assert!(check_axioms(&divisor(360).unwrap(), 0, 0).ok());
        assert!(check_axioms(&partition(4).unwrap(), 0, 0).ok());
        assert!(check_axioms(&chain(7), 0, 0).ok());
        // sampled suites above the exhaustive limit
        let r = check_axioms(&partition(5).unwrap(), DEFAULT_SAMPLES, 1);
        assert!(r.ok(), "{r}");
        let r = check_axioms(&powerset(9, Orientation::Reversed).unwrap(), DEFAULT_SAMPLES, 2);
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn distributivity_of_families() {
        assert!(is_distributive(&powerset(4, Orientation::Standard).unwrap()));
        assert!(is_distributive(&divisor(30).unwrap()));
        assert!(is_distributive(&fixture_fig2()));
        assert!(!is_distributive(&fixture_fig1a()));
        assert!(!is_distributive(&partition(3).unwrap()));
    }

    #[test]
    fn set_lattice_behaves_like_reversed_powerset() {
        let labels: Vec<String> = (0..5).map(|i| format!("m{i}")).collect();
        let wide = SetLattice::new(labels.clone());
        let small = PowersetLattice::over(labels, Orientation::Reversed);
        for a in 0..32usize {
            for b in 0..32usize {
                let members = |m: usize| (0..5).filter(move |i| m >> i & 1 == 1);
                let (wa, wb) = (wide.intern(members(a)), wide.intern(members(b)));
                let (sa, sb) = (ElementId(a), ElementId(b));
                assert_eq!(wide.leq(wa, wb), small.leq(sa, sb));
                assert_eq!(wide.name(wide.join(wa, wb)), small.name(small.join(sa, sb)));
                assert_eq!(wide.name(wide.meet(wa, wb)), small.name(small.meet(sa, sb)));
            }
        }
        assert_eq!(wide.name(wide.top()), "{}");
        assert_eq!(wide.name(wide.bottom()), "{m0,m1,m2,m3,m4}");
    }
}

use std::borrow::Cow;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{meet_via_join, ElementId, JoinSemilattice, Lattice};
use crate::report::ValidationReport;

/// Join/meet tables are materialized up to this many elements (n² entries each).
pub const TABLE_LIMIT: usize = 4096;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("input is not a join-semilattice: {0} and {1} have no unique least upper bound")]
    InputNotJoinSemilattice(String, String),
    #[error("invalid lattice: {0}")]
    Invalid(ValidationReport),
    #[error("{what} = {value} exceeds the supported maximum {max}")]
    ParameterTooLarge { what: &'static str, value: u64, max: u64 },
}

/// How the pairs of an explicit relation are to be read. Both kinds are
/// closed reflexively and transitively on load.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Covers,
    Leq,
}

/// Reflexive-transitive closure of a relation, kept as up-set and down-set rows.
#[derive(Clone)]
struct Order {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    up_count: Vec<u32>,
    down_count: Vec<u32>,
}

impl Order {
    fn close(n: usize, pairs: &[(usize, usize)]) -> Order {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(lo, hi) in pairs {
            up[lo].insert(hi);
        }
        // Warshall over bit rows
        for k in 0..n {
            let row_k = up[k].clone();
            for (i, row) in up.iter_mut().enumerate() {
                if i != k && row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up(up)
    }

    fn from_up(up: Vec<FixedBitSet>) -> Order {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        let up_count = up.iter().map(|r| r.count_ones(..) as u32).collect();
        let down_count = down.iter().map(|r| r.count_ones(..) as u32).collect();
        Order {
            up,
            down,
            up_count,
            down_count,
        }
    }

    fn len(&self) -> usize {
        self.up.len()
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    fn first_cycle(&self) -> Option<(usize, usize)> {
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                if y > x && self.up[y].contains(x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Least element of `s` if it has one, else the minimal elements.
    fn least_of(
        s: &FixedBitSet,
        rows: &[FixedBitSet],
        counts: &[u32],
        dual: &[FixedBitSet],
    ) -> Result<usize, Vec<usize>> {
        let cand = s.ones().max_by_key(|&c| (counts[c], std::cmp::Reverse(c)));
        if let Some(c) = cand {
            if s.is_subset(&rows[c]) {
                return Ok(c);
            }
        }
        let minimal = s.ones().filter(|&m| dual[m].intersection(s).count() == 1).collect();
        Err(minimal)
    }

    fn lub(&self, x: usize, y: usize) -> Result<usize, Vec<usize>> {
        let mut s = self.up[x].clone();
        s.intersect_with(&self.up[y]);
        Self::least_of(&s, &self.up, &self.up_count, &self.down)
    }

    fn glb(&self, x: usize, y: usize) -> Result<usize, Vec<usize>> {
        let mut s = self.down[x].clone();
        s.intersect_with(&self.down[y]);
        Self::least_of(&s, &self.down, &self.down_count, &self.up)
    }
}

/// A lattice given by an explicit order, with bitset rows for `leq` and
/// precomputed join/meet tables for up to [`TABLE_LIMIT`] elements.
#[derive(Clone)]
pub struct ExplicitLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    order: Order,
    join: Option<Vec<u32>>,
    meet: Option<Vec<u32>>,
    top: usize,
    bottom: usize,
}

impl std::fmt::Debug for ExplicitLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExplicitLattice")
            .field("names", &self.names)
            .field("top", &self.names[self.top])
            .field("bottom", &self.names[self.bottom])
            .finish()
    }
}

type Resolved = (HashMap<String, usize>, Vec<(usize, usize)>);

fn resolve_pairs<S: AsRef<str>>(names: &[String], pairs: &[(S, S)], report: &mut ValidationReport) -> Option<Resolved> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            report.fail("duplicate-name", vec![n.clone()], "element declared twice");
            return None;
        }
    }
    let mut out = Vec::with_capacity(pairs.len());
    for (lo, hi) in pairs {
        let (lo, hi) = (lo.as_ref(), hi.as_ref());
        match (index.get(lo), index.get(hi)) {
            (Some(&a), Some(&b)) => out.push((a, b)),
            _ => {
                report.fail(
                    "unknown-element",
                    vec![lo.to_string(), hi.to_string()],
                    "pair references an undeclared element",
                );
                return None;
            }
        }
    }
    Some((index, out))
}

/// Validates a named relation as a lattice order. On failure the report
/// carries the first offending pair: a cycle, or a pair with zero or several
/// minimal upper (lower) bounds.
pub fn validate_lattice<S: AsRef<str>>(names: &[String], pairs: &[(S, S)]) -> ValidationReport {
    match ExplicitLattice::build(names, pairs) {
        Ok(_) => ValidationReport::new(),
        Err(r) => r,
    }
}

fn bound_failure(report: &mut ValidationReport, law: &str, names: &[String], x: usize, y: usize, found: &[usize]) {
    let listed: Vec<&str> = found.iter().map(|&i| names[i].as_str()).collect();
    report.fail(
        law,
        vec![names[x].clone(), names[y].clone()],
        format!("has {} candidate bound(s) [{}]", found.len(), listed.join(", ")),
    );
}

impl ExplicitLattice {
    pub fn from_relation<S: AsRef<str>>(names: &[String], pairs: &[(S, S)]) -> Result<Self, LatticeError> {
        Self::build(names, pairs).map_err(LatticeError::Invalid)
    }

    fn build<S: AsRef<str>>(names: &[String], pairs: &[(S, S)]) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::new();
        if names.is_empty() {
            report.fail("nonempty", vec![], "no elements declared");
            return Err(report);
        }
        let Some((index, idx_pairs)) = resolve_pairs(names, pairs, &mut report) else {
            return Err(report);
        };
        let order = Order::close(names.len(), &idx_pairs);
        if let Some((x, y)) = order.first_cycle() {
            report.fail(
                "antisymmetry",
                vec![names[x].clone(), names[y].clone()],
                "elements lie on a cycle",
            );
            return Err(report);
        }
        let n = names.len();
        let store = n <= TABLE_LIMIT;
        let mut join = if store { vec![0u32; n * n] } else { Vec::new() };
        let mut meet = if store { vec![0u32; n * n] } else { Vec::new() };
        for x in 0..n {
            for y in x..n {
                match order.lub(x, y) {
                    Ok(j) if store => {
                        join[x * n + y] = j as u32;
                        join[y * n + x] = j as u32;
                    }
                    Ok(_) => {}
                    Err(found) => {
                        bound_failure(&mut report, "unique-join", names, x, y, &found);
                        return Err(report);
                    }
                }
            }
        }
        for x in 0..n {
            for y in x..n {
                match order.glb(x, y) {
                    Ok(m) if store => {
                        meet[x * n + y] = m as u32;
                        meet[y * n + x] = m as u32;
                    }
                    Ok(_) => {}
                    Err(found) => {
                        bound_failure(&mut report, "unique-meet", names, x, y, &found);
                        return Err(report);
                    }
                }
            }
        }
        Ok(Self::assemble(
            names.to_vec(),
            index,
            order,
            store.then_some(join),
            store.then_some(meet),
        ))
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, usize>,
        order: Order,
        join: Option<Vec<u32>>,
        meet: Option<Vec<u32>>,
    ) -> Self {
        let n = names.len();
        let top = (0..n)
            .find(|&i| order.down_count[i] as usize == n)
            .expect("lattice has a top");
        let bottom = (0..n)
            .find(|&i| order.up_count[i] as usize == n)
            .expect("lattice has a bottom");
        ExplicitLattice {
            names,
            index,
            order,
            join,
            meet,
            top,
            bottom,
        }
    }

    /// Materializes any lattice into explicit form, copying names, order and
    /// operation tables.
    pub fn from_lattice<L: Lattice + ?Sized>(l: &L) -> Self {
        let n = l.size();
        let names: Vec<String> = l.elements().map(|e| l.name(e).into_owned()).collect();
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for x in l.elements() {
            for y in l.elements() {
                if l.leq(x, y) {
                    up[x.0].insert(y.0);
                }
            }
        }
        let order = Order::from_up(up);
        let (join, meet) = if n <= TABLE_LIMIT {
            let mut join = vec![0u32; n * n];
            let mut meet = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    join[x * n + y] = l.join(ElementId(x), ElementId(y)).0 as u32;
                    meet[x * n + y] = l.meet(ElementId(x), ElementId(y)).0 as u32;
                }
            }
            (Some(join), Some(meet))
        } else {
            (None, None)
        };
        Self::assemble(names, index, order, join, meet)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Up-set row of `x` (all `y` with `x <= y`).
    pub fn up_set(&self, x: ElementId) -> &FixedBitSet {
        &self.order.up[x.0]
    }

    pub fn down_set(&self, x: ElementId) -> &FixedBitSet {
        &self.order.down[x.0]
    }
}

impl JoinSemilattice for ExplicitLattice {
    fn size(&self) -> usize {
        self.names.len()
    }

    #[inline]
    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.order.leq(x.0, y.0)
    }

    #[inline]
    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        match &self.join {
            Some(t) => ElementId(t[x.0 * self.names.len() + y.0] as usize),
            None => ElementId(self.order.lub(x.0, y.0).expect("validated lattice")),
        }
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        Cow::Borrowed(&self.names[x.0])
    }

    fn find(&self, name: &str) -> Option<ElementId> {
        self.index.get(name).copied().map(ElementId)
    }
}

impl Lattice for ExplicitLattice {
    #[inline]
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        match &self.meet {
            Some(t) => ElementId(t[x.0 * self.names.len() + y.0] as usize),
            None => ElementId(self.order.glb(x.0, y.0).expect("validated lattice")),
        }
    }

    fn top(&self) -> ElementId {
        ElementId(self.top)
    }

    fn bottom(&self) -> ElementId {
        ElementId(self.bottom)
    }
}

/// A finite join-semilattice given by its order; only joins are available.
struct JoinView<'a> {
    names: &'a [String],
    order: &'a Order,
}

impl JoinSemilattice for JoinView<'_> {
    fn size(&self) -> usize {
        self.names.len()
    }

    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.order.leq(x.0, y.0)
    }

    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.order.lub(x.0, y.0).expect("checked join-semilattice"))
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        Cow::Borrowed(&self.names[x.0])
    }
}

/// Turns a finite join-semilattice into a lattice. When the input has no
/// least element an artificial one named `bot` (primed until unique) is added
/// below everything; meets are then defined through joins of common lower
/// bounds.
pub fn complete_with_bottom<S: AsRef<str>>(
    names: &[String],
    pairs: &[(S, S)],
) -> Result<ExplicitLattice, LatticeError> {
    let mut report = ValidationReport::new();
    if names.is_empty() {
        report.fail("nonempty", vec![], "no elements declared");
        return Err(LatticeError::Invalid(report));
    }
    let Some((_, mut idx_pairs)) = resolve_pairs(names, pairs, &mut report) else {
        return Err(LatticeError::Invalid(report));
    };
    let probe = Order::close(names.len(), &idx_pairs);
    if let Some((x, y)) = probe.first_cycle() {
        report.fail(
            "antisymmetry",
            vec![names[x].clone(), names[y].clone()],
            "elements lie on a cycle",
        );
        return Err(LatticeError::Invalid(report));
    }
    let n = names.len();
    for x in 0..n {
        for y in x + 1..n {
            if probe.lub(x, y).is_err() {
                return Err(LatticeError::InputNotJoinSemilattice(
                    names[x].clone(),
                    names[y].clone(),
                ));
            }
        }
    }

    let mut all_names = names.to_vec();
    let has_minimum = probe.up_count.iter().any(|&c| c as usize == n);
    let order = if has_minimum {
        probe
    } else {
        let mut bot = "bot".to_string();
        while names.contains(&bot) {
            bot.push('\'');
        }
        all_names.push(bot);
        idx_pairs.extend((0..n).map(|i| (n, i)));
        Order::close(n + 1, &idx_pairs)
    };

    let total = all_names.len();
    let view = JoinView {
        names: &all_names,
        order: &order,
    };
    let mut join = vec![0u32; total * total];
    let mut meet = vec![0u32; total * total];
    for x in 0..total {
        for y in 0..total {
            let (ex, ey) = (ElementId(x), ElementId(y));
            join[x * total + y] = view.join(ex, ey).0 as u32;
            meet[x * total + y] = meet_via_join(&view, &[ex, ey]).expect("bottom exists").0 as u32;
        }
    }
    let index = all_names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok(ExplicitLattice::assemble(
        all_names,
        index,
        order,
        Some(join),
        Some(meet),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::check_axioms;
    use crate::zoo;

    fn s(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn single_element_is_valid() {
        let names = s(&["x"]);
        let pairs: Vec<(String, String)> = vec![];
        assert!(validate_lattice(&names, &pairs).ok());
        let l = ExplicitLattice::from_relation(&names, &pairs).unwrap();
        assert_eq!(l.top(), l.bottom());
    }

    #[test]
    fn bowtie_reports_two_minimal_upper_bounds() {
        // brute force: a,b share upper bounds c and d, neither below the other
        let names = s(&["a", "b", "c", "d"]);
        let pairs = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")];
        let r = validate_lattice(&names, &pairs);
        assert!(!r.ok());
        let v = r.first_failure().unwrap();
        assert_eq!(v.law, "unique-join");
        assert_eq!(v.witness, s(&["a", "b"]));
        assert!(v.detail.contains("2 candidate"), "{}", v.detail);
    }

    #[test]
    fn cycle_is_rejected() {
        let names = s(&["a", "b"]);
        let r = validate_lattice(&names, &[("a", "b"), ("b", "a")]);
        assert_eq!(r.first_failure().unwrap().law, "antisymmetry");
    }

    #[test]
    fn unknown_and_duplicate_names() {
        let r = validate_lattice(&s(&["a"]), &[("a", "zz")]);
        assert_eq!(r.first_failure().unwrap().law, "unknown-element");
        let r = validate_lattice(&s(&["a", "a"]), &Vec::<(String, String)>::new());
        assert_eq!(r.first_failure().unwrap().law, "duplicate-name");
    }

    #[test]
    fn fig2_cover_pairs_validate() {
        let names = s(&["top", "1", "2", "3", "4", "bot"]);
        let pairs = [
            ("1", "top"),
            ("2", "top"),
            ("4", "1"),
            ("4", "2"),
            ("3", "2"),
            ("bot", "4"),
            ("bot", "3"),
        ];
        assert!(validate_lattice(&names, &pairs).ok());
    }

    #[test]
    fn completion_of_fig1a_semilattice_is_m3() {
        let names = s(&["top", "1", "2", "3"]);
        let pairs = [("1", "top"), ("2", "top"), ("3", "top")];
        let l = complete_with_bottom(&names, &pairs).unwrap();
        assert_eq!(l.size(), 5);
        assert_eq!(l.name(l.bottom()), "bot");
        let fig = zoo::fixture_fig1a();
        for x in fig.elements() {
            for y in fig.elements() {
                let (a, b) = (l.find(&fig.name(x)).unwrap(), l.find(&fig.name(y)).unwrap());
                assert_eq!(l.name(l.join(a, b)), fig.name(fig.join(x, y)));
                assert_eq!(l.name(l.meet(a, b)), fig.name(fig.meet(x, y)));
            }
        }
        assert!(check_axioms(&l, 0, 0).ok());
    }

    #[test]
    fn completion_of_fig1b_semilattice() {
        let names = s(&["top", "1", "2", "3", "4"]);
        let pairs = [("1", "top"), ("2", "top"), ("3", "top"), ("4", "1"), ("4", "2")];
        let l = complete_with_bottom(&names, &pairs).unwrap();
        assert_eq!(l.size(), 6);
        let (one, two) = (l.find("1").unwrap(), l.find("2").unwrap());
        assert_eq!(l.name(l.meet(one, two)), "4");
        let (three, four) = (l.find("3").unwrap(), l.find("4").unwrap());
        assert_eq!(l.meet(three, four), l.bottom());
    }

    #[test]
    fn completion_keeps_lattices_unchanged() {
        let names = s(&["top", "1", "2", "3", "4", "bot"]);
        let pairs = [
            ("1", "top"),
            ("2", "top"),
            ("4", "1"),
            ("4", "2"),
            ("3", "2"),
            ("bot", "4"),
            ("bot", "3"),
        ];
        let l = complete_with_bottom(&names, &pairs).unwrap();
        assert_eq!(l.names(), &names[..]);
    }

    #[test]
    fn completion_rejects_non_semilattice() {
        let names = s(&["a", "b", "c", "d"]);
        let pairs = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")];
        match complete_with_bottom(&names, &pairs) {
            Err(LatticeError::InputNotJoinSemilattice(a, b)) => assert_eq!((a.as_str(), b.as_str()), ("a", "b")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bot_name_is_made_unique() {
        let names = s(&["top", "bot", "x"]);
        let pairs = [("bot", "top"), ("x", "top")];
        let l = complete_with_bottom(&names, &pairs).unwrap();
        assert_eq!(l.name(l.bottom()), "bot'");
    }

    #[test]
    fn from_lattice_round_trips_operations() {
        let p = zoo::divisor(60).unwrap();
        let e = ExplicitLattice::from_lattice(&p);
        for x in p.elements() {
            for y in p.elements() {
                assert_eq!(e.join(x, y), p.join(x, y));
                assert_eq!(e.meet(x, y), p.meet(x, y));
                assert_eq!(e.leq(x, y), p.leq(x, y));
            }
        }
        assert_eq!(e.top(), p.top());
    }
}

//! Brute-force ground truth and structural analyses.
//!
//! Everything here is written for clarity over speed and is used to check
//! the real algorithms.

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{HasseDiagram, JoinMap};
use crate::border::{cover_from_border, is_border, is_proper, Border};
use crate::lattice::{meet_all, names, ElementId, JoinSemilattice, Lattice, DEFAULT_SAMPLES, EXHAUSTIVE_LIMIT};
use crate::traversal::TopoOrder;

pub use crate::report::{ValidationReport, Violation};

/// Largest lattice accepted by [`width_exhaustive`].
pub const WIDTH_EXHAUSTIVE_LIMIT: usize = 20;

fn strict_up_sets<L: Lattice + ?Sized>(l: &L) -> Vec<FixedBitSet> {
    let n = l.size();
    l.elements()
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(n);
            for y in l.elements() {
                if l.lt(x, y) {
                    s.insert(y.0);
                }
            }
            s
        })
        .collect()
}

/// Transitive reduction from `leq` alone. Edges are sorted by
/// `(lower, upper)` index.
pub fn oracle_hasse<L: Lattice + ?Sized>(l: &L) -> HasseDiagram {
    let n = l.size();
    let up = strict_up_sets(l);
    let mut h = HasseDiagram::new(n);
    let mut shadow = FixedBitSet::with_capacity(n);
    for x in 0..n {
        shadow.clear();
        for z in up[x].ones() {
            shadow.union_with(&up[z]);
        }
        for y in up[x].difference(&shadow) {
            h.add_edge(ElementId(x), ElementId(y));
        }
    }
    h
}

/// `{y : x ≺ y}` in element order.
pub fn upper_cover<L: Lattice + ?Sized>(l: &L, x: ElementId) -> Vec<ElementId> {
    let above: Vec<ElementId> = l.elements().filter(|&y| l.lt(x, y)).collect();
    above
        .iter()
        .copied()
        .filter(|&y| !above.iter().any(|&z| l.lt(z, y)))
        .collect()
}

/// `{x : x ≺ y}` in element order.
pub fn lower_cover<L: Lattice + ?Sized>(l: &L, y: ElementId) -> Vec<ElementId> {
    let below: Vec<ElementId> = l.elements().filter(|&x| l.lt(x, y)).collect();
    below
        .iter()
        .copied()
        .filter(|&x| !below.iter().any(|&z| l.lt(x, z)))
        .collect()
}

/// Maximum antichain size, as `n` minus a maximum matching in the bipartite
/// graph of the strict order (Hopcroft–Karp).
pub fn width<L: Lattice + ?Sized>(l: &L) -> usize {
    let n = l.size();
    let adj: Vec<Vec<usize>> = strict_up_sets(l).iter().map(|s| s.ones().collect()).collect();
    n - max_matching(n, &adj)
}

fn max_matching(n: usize, adj: &[Vec<usize>]) -> usize {
    const FREE: usize = usize::MAX;
    let mut match_left = vec![FREE; n];
    let mut match_right = vec![FREE; n];
    let mut dist = vec![0usize; n];
    let mut matched = 0;
    loop {
        // layer free left vertices by alternating-path distance
        let mut queue: Vec<usize> = Vec::with_capacity(n);
        for u in 0..n {
            if match_left[u] == FREE {
                dist[u] = 0;
                queue.push(u);
            } else {
                dist[u] = FREE;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in &adj[u] {
                match match_right[v] {
                    FREE => found = true,
                    w if dist[w] == FREE => {
                        dist[w] = dist[u] + 1;
                        queue.push(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return matched;
        }
        let mut next = vec![0usize; n];
        for u in 0..n {
            if match_left[u] == FREE && augment(u, adj, &mut match_left, &mut match_right, &mut dist, &mut next) {
                matched += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[u] < adj[u].len() {
        let v = adj[u][next[u]];
        next[u] += 1;
        let w = match_right[v];
        let ok = w == usize::MAX || (dist[w] == dist[u] + 1 && augment(w, adj, match_left, match_right, dist, next));
        if ok {
            match_left[u] = v;
            match_right[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Maximum antichain by exhaustive branching. `None` above
/// [`WIDTH_EXHAUSTIVE_LIMIT`] elements.
pub fn width_exhaustive<L: Lattice + ?Sized>(l: &L) -> Option<usize> {
    let n = l.size();
    if n > WIDTH_EXHAUSTIVE_LIMIT {
        return None;
    }
    let incomparable: Vec<u32> = l
        .elements()
        .map(|x| {
            l.elements()
                .filter(|&y| !l.leq(x, y) && !l.leq(y, x))
                .fold(0u32, |m, y| m | 1 << y.0)
        })
        .collect();
    fn best(allowed: u32, incomparable: &[u32]) -> usize {
        if allowed == 0 {
            return 0;
        }
        let v = allowed.trailing_zeros() as usize;
        let rest = allowed & !(1 << v);
        let with = 1 + best(rest & incomparable[v], incomparable);
        let without = best(rest, incomparable);
        with.max(without)
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Some(best(all, &incomparable))
}

fn distributive_at<L: Lattice + ?Sized>(l: &L, x: ElementId, y: ElementId, z: ElementId) -> bool {
    l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z))
}

/// First triple `(x, y, z)` in index order with
/// `x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)`. O(n³) with early exit.
pub fn distributivity_witness<L: Lattice + ?Sized>(l: &L) -> Option<[ElementId; 3]> {
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                if !distributive_at(l, x, y, z) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// Same check on `samples` random triples.
pub fn sampled_distributivity_witness<L: Lattice + ?Sized>(l: &L, samples: usize, seed: u64) -> Option<[ElementId; 3]> {
    let n = l.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).find_map(|_| {
        let [x, y, z] = [0; 3].map(|_| ElementId(rng.gen_range(0..n)));
        (!distributive_at(l, x, y, z)).then_some([x, y, z])
    })
}

pub fn is_distributive<L: Lattice + ?Sized>(l: &L) -> bool {
    distributivity_witness(l).is_none()
}

/// Pairs exhaustively up to [`EXHAUSTIVE_LIMIT`] elements, otherwise
/// [`DEFAULT_SAMPLES`] random pairs.
fn pairs(n: usize, rng: &mut ChaCha8Rng) -> Vec<(ElementId, ElementId)> {
    if n <= EXHAUSTIVE_LIMIT {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (ElementId(x), ElementId(y))))
            .collect()
    } else {
        (0..DEFAULT_SAMPLES)
            .map(|_| (ElementId(rng.gen_range(0..n)), ElementId(rng.gen_range(0..n))))
            .collect()
    }
}

/// Order-theoretic laws the diagram algorithms rely on:
///
/// * `monotone-meet`: `f(⋀Y) <= ⋀f(Y)` for a join-homomorphism `f`, on all
///   pairs plus 1,000 random subsets (only with `emb`);
/// * `two-covers`: distinct lower covers of `y` join to `y`;
/// * `cover-exists`: for `x < y` some upper cover of `x` and some lower
///   cover of `y` lie in between.
///
/// Exhaustive up to [`EXHAUSTIVE_LIMIT`] elements, sampled above.
pub fn check_laws<L, M>(l: &L, emb: Option<&M>) -> ValidationReport
where
    L: Lattice + ?Sized,
    M: JoinMap + ?Sized,
{
    let mut report = ValidationReport::new();
    let n = l.size();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let h = oracle_hasse(l);
    let sample = pairs(n, &mut rng);

    if let Some(emb) = emb {
        let c = emb.target();
        let mut subsets: Vec<Vec<ElementId>> = sample.iter().map(|&(x, y)| vec![x, y]).collect();
        for _ in 0..1000 {
            subsets.push(l.elements().filter(|_| rng.gen_bool(0.5)).collect());
        }
        for ys in &subsets {
            let lhs = emb.apply(meet_all(l, ys.iter().copied()));
            let rhs = meet_all(c, ys.iter().map(|&y| emb.apply(y)));
            if !c.leq(lhs, rhs) {
                report.fail("monotone-meet", names(l, ys), "f(meet Y) is not below meet f(Y)");
                break;
            }
        }
    }

    'outer: for y in l.elements() {
        let lc = h.lower_covers(y);
        for (i, &a) in lc.iter().enumerate() {
            for &b in &lc[i + 1..] {
                if l.join(a, b) != y {
                    report.fail(
                        "two-covers",
                        names(l, &[a, b, y]),
                        format!("join is {}", l.name(l.join(a, b))),
                    );
                    break 'outer;
                }
            }
        }
    }

    for &(x, y) in &sample {
        if !l.lt(x, y) {
            continue;
        }
        let up_ok = h.upper_covers(x).iter().any(|&z| l.leq(z, y));
        let down_ok = h.lower_covers(y).iter().any(|&z| l.leq(x, z));
        if !(up_ok && down_ok) {
            report.fail("cover-exists", names(l, &[x, y]), "no cover between x and y");
            break;
        }
    }
    report
}

/// Replays the standard border step along `order` using oracle covers and
/// checks at every element that the border is a proper border, that every
/// member joins strictly above the element, that the cover read off the
/// border equals the oracle cover, and that `|B| <= width`.
pub fn check_border_laws<L: Lattice + ?Sized>(l: &L, order: &TopoOrder, width: usize) -> ValidationReport {
    let mut report = ValidationReport::new();
    let h = oracle_hasse(l);
    let mut border = Border::new(l.size());
    for &x in order {
        let b = border.to_vec();
        let uc = h.upper_covers(x);
        if !is_border(l, &b, x, uc) {
            report.fail("border", names(l, &[x]), format!("{:?} is not a border", names(l, &b)));
            return report;
        }
        if !is_proper(l, &b) {
            report.fail("proper-border", names(l, &b), "border is not an antichain");
            return report;
        }
        if b.len() > width {
            report.fail("border-width", names(l, &[x]), format!("|B| = {} > {width}", b.len()));
            return report;
        }
        if let Some(&y) = b.iter().find(|&&y| !l.lt(x, l.join(x, y))) {
            report.fail("join-above", names(l, &[x, y]), "x v y is not above x");
            return report;
        }
        let mut got = cover_from_border(l, x, &b);
        got.sort();
        let mut want = uc.to_vec();
        want.sort();
        if got != want {
            report.fail(
                "border-cover",
                names(l, &[x]),
                format!("read {:?}, expected {:?}", names(l, &got), names(l, &want)),
            );
            return report;
        }
        border.advance(x, uc);
    }
    report
}

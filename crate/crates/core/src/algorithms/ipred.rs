use fixedbitset::FixedBitSet;

use super::{check_order, validate_embedding, AlgoError, Construction, HasseDiagram, JoinMap, Step, StepObserver};
use crate::border::{candidates, Border};
use crate::lattice::{meet_all, ElementId, JoinSemilattice, Lattice};
use crate::traversal::{TopoOrder, TraversalError};

#[derive(Clone, Copy, Debug)]
pub struct IpredOptions {
    /// Check the order with O(n²) comparisons before running.
    pub verify_order: bool,
    /// Skip embedding validation. Results are only correct for valid
    /// embeddings.
    pub unchecked: bool,
}

impl Default for IpredOptions {
    fn default() -> Self {
        IpredOptions {
            verify_order: true,
            unchecked: false,
        }
    }
}

/// Builds the Hasse diagram with the constant-time cover test
/// `f(x) ∨ LC[z] >= f(z)`, where `LC[z]` holds the meet of `f` over the
/// lower covers of `z` found so far.
pub fn generalized_ipred<L, M>(
    l: &L,
    order: &TopoOrder,
    emb: &M,
    opts: &IpredOptions,
    mut observer: Option<&mut dyn StepObserver>,
) -> Result<Construction, AlgoError>
where
    L: Lattice + ?Sized,
    M: JoinMap + ?Sized,
{
    check_order(l, order, opts.verify_order)?;
    if !opts.unchecked {
        let report = validate_embedding(emb, l);
        if !report.ok() {
            return Err(AlgoError::EmbeddingInvalid(report));
        }
    }
    let c = emb.target();
    let n = l.size();
    let mut diagram = HasseDiagram::new(n);
    let mut border = Border::new(n);
    let mut lc: Vec<Option<ElementId>> = vec![None; n];
    let mut seen = FixedBitSet::with_capacity(n);
    let mut max_border = 0;
    let mut total = 0u64;
    let mut cover = Vec::new();

    for (index, &x) in order.iter().enumerate() {
        lc[x.0] = Some(c.top());
        let before = observer.as_ref().map(|_| border.to_vec());
        let cand = candidates(l, x, border.iter(), &mut seen);
        total += cand.len() as u64;
        let fx = emb.apply(x);
        cover.clear();
        for &z in &cand {
            let lcz = match lc[z.0] {
                Some(v) if z != x => v,
                _ => {
                    let (earlier, later) = if z == x {
                        let y = border.iter().find(|&y| l.join(x, y) == x).unwrap_or(x);
                        (y, x)
                    } else {
                        (x, z)
                    };
                    return Err(TraversalError::NotReverseTopological {
                        earlier: l.name(earlier).into_owned(),
                        later: l.name(later).into_owned(),
                    }
                    .into());
                }
            };
            if c.leq(emb.apply(z), c.join(fx, lcz)) {
                diagram.add_edge(x, z);
                lc[z.0] = Some(c.meet(lcz, fx));
                border.remove(z);
                cover.push(z);
            }
        }
        border.insert(x);
        max_border = max_border.max(border.len());

        if let (Some(obs), Some(before)) = (observer.as_deref_mut(), before) {
            obs.on_step(&Step {
                index,
                element: x,
                border_before: &before,
                candidates: &cand,
                cover: &cover,
                border_after: &border.to_vec(),
                lc: Some(&lc),
            });
        }
    }

    Ok(Construction {
        diagram,
        max_border,
        candidates: total,
    })
}

/// Cover test valid in any lattice: with `ys` the lower covers of `z`
/// preceding `x`, `x` is a lower cover of `z` iff the meet of `x ∨ y` over
/// `ys` is at least `z` (the empty meet is `top`).
pub fn slow_cover_test<L: Lattice + ?Sized>(l: &L, x: ElementId, z: ElementId, ys: &[ElementId]) -> bool {
    let m = meet_all(l, ys.iter().map(|&y| l.join(x, y)));
    l.leq(z, m)
}

/// Distributive-lattice form of [`slow_cover_test`], with `meet_y` the meet
/// of those lower covers.
pub fn distributive_cover_test<L: Lattice + ?Sized>(l: &L, x: ElementId, z: ElementId, meet_y: ElementId) -> bool {
    l.leq(z, l.join(x, meet_y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{identity_embedding, label_embedding, meet_irreducible_embedding, TraceRecorder};
    use crate::lattice::{JoinSemilattice, OpCounters};
    use crate::oracle::oracle_hasse;
    use crate::traversal::{random_linear_extension, reverse_topo_sort, Strategy};
    use crate::zoo;

    fn id<L: JoinSemilattice>(l: &L, name: &str) -> ElementId {
        l.find(name).unwrap()
    }

    fn order<L: Lattice>(l: &L) -> TopoOrder {
        reverse_topo_sort(l, &Strategy::AboveCount).unwrap()
    }

    #[test]
    fn fig1a_with_label_embedding() {
        let a = zoo::fixture_fig1a();
        let b = zoo::fixture_fig1b();
        let emb = label_embedding(&a, &b).unwrap();
        let mut rec = TraceRecorder::with_codomain(&a, &b);
        // the codomain is not distributive, so the run has to skip validation
        let opts = IpredOptions {
            unchecked: true,
            ..Default::default()
        };
        assert!(generalized_ipred(&a, &order(&a), &emb, &IpredOptions::default(), None).is_err());
        let run = generalized_ipred(&a, &order(&a), &emb, &opts, Some(&mut rec)).unwrap();
        assert_eq!(run.diagram, oracle_hasse(&a));
        let lc_top: Vec<String> = rec
            .trace()
            .records
            .iter()
            .map(|r| r.lc.as_ref().unwrap()[0].clone().unwrap())
            .collect();
        assert_eq!(lc_top, ["top", "1", "4", "bot", "bot"]);
    }

    #[test]
    fn fig2_identity_row_three_and_final_lc() {
        let f2 = zoo::fixture_fig2();
        let emb = identity_embedding(&f2);
        let mut rec = TraceRecorder::with_codomain(&f2, &f2);
        let run = generalized_ipred(&f2, &order(&f2), &emb, &IpredOptions::default(), Some(&mut rec)).unwrap();
        assert_eq!(run.diagram, oracle_hasse(&f2));
        let t = rec.into_trace();
        let row3 = &t.records[3];
        assert_eq!(row3.candidates, ["top", "2"]);
        assert_eq!(row3.added, [("3".to_string(), "2".to_string())]);
        assert_eq!(row3.lc.as_ref().unwrap()[2].as_deref(), Some("3"));
        // 1 is never a candidate after row 4, so LC[1] stays at f(4)
        let last: Vec<String> = t.records[5]
            .lc
            .clone()
            .unwrap()
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert_eq!(last, ["4", "4", "bot", "bot", "bot", "top"]);
        assert_eq!(t.records[5].border, ["bot"]);
    }

    #[test]
    fn nondistributive_identity_misses_an_edge() {
        let a = zoo::fixture_fig1a();
        let emb = identity_embedding(&a);
        let err = generalized_ipred(&a, &order(&a), &emb, &IpredOptions::default(), None).unwrap_err();
        assert!(matches!(err, AlgoError::EmbeddingInvalid(_)));
        let opts = IpredOptions {
            unchecked: true,
            ..Default::default()
        };
        let run = generalized_ipred(&a, &order(&a), &emb, &opts, None).unwrap();
        assert_eq!(run.diagram.len(), 5);
        assert!(!run.diagram.contains(id(&a, "3"), a.top()));

        let mi = meet_irreducible_embedding(&a);
        let run = generalized_ipred(&a, &order(&a), &mi, &IpredOptions::default(), None).unwrap();
        assert_eq!(run.diagram.len(), 6);
    }

    #[test]
    fn lc_invariant_holds_after_each_step() {
        for l in [zoo::fixture_fig2()] {
            let emb = identity_embedding(&l);
            for seed in 0..5 {
                let mut checks = 0;
                let mut found: Vec<Vec<ElementId>> = vec![Vec::new(); l.size()];
                let mut obs = |s: &Step<'_>| {
                    for &z in s.cover {
                        found[z.0].push(s.element);
                    }
                    for (z, v) in s.lc.unwrap().iter().enumerate() {
                        if let Some(v) = v {
                            assert_eq!(*v, meet_all(&l, found[z].iter().copied()));
                            checks += 1;
                        }
                    }
                };
                let o = random_linear_extension(&l, seed);
                generalized_ipred(&l, &o, &emb, &IpredOptions::default(), Some(&mut obs)).unwrap();
                assert!(checks > 0);
            }
        }
    }

    #[test]
    fn slow_test_examples() {
        let a = zoo::fixture_fig1a();
        let ys = [id(&a, "1"), id(&a, "2")];
        assert!(slow_cover_test(&a, id(&a, "3"), a.top(), &ys));
        assert!(slow_cover_test(&a, id(&a, "3"), a.top(), &[]));
        let f2 = zoo::fixture_fig2();
        let ys = [id(&f2, "1"), id(&f2, "2")];
        assert!(!slow_cover_test(&f2, id(&f2, "3"), f2.top(), &ys));
    }

    #[test]
    fn distributive_test_examples() {
        let f2 = zoo::fixture_fig2();
        assert!(distributive_cover_test(&f2, id(&f2, "4"), id(&f2, "2"), id(&f2, "3")));
        assert!(distributive_cover_test(&f2, id(&f2, "4"), id(&f2, "2"), f2.top()));
    }

    #[test]
    fn cover_tests_agree_on_powerset4() {
        let p = zoo::powerset(4, zoo::Orientation::Standard).unwrap();
        let h = oracle_hasse(&p);
        for z in p.elements() {
            let lower = h.lower_covers(z);
            for &x in lower {
                for ymask in 0u32..(1 << lower.len()) {
                    let ys: Vec<ElementId> = lower
                        .iter()
                        .enumerate()
                        .filter(|&(i, &y)| ymask >> i & 1 == 1 && y != x)
                        .map(|(_, &y)| y)
                        .collect();
                    let slow = slow_cover_test(&p, x, z, &ys);
                    let fast = distributive_cover_test(&p, x, z, meet_all(&p, ys.iter().copied()));
                    assert_eq!(slow, fast);
                    assert!(slow);
                }
            }
            // non-covers below z fail both tests against the full lower cover
            for x in p.elements().filter(|&x| p.lt(x, z) && !h.contains(x, z)) {
                assert!(!slow_cover_test(&p, x, z, lower));
                assert!(!distributive_cover_test(&p, x, z, meet_all(&p, lower.iter().copied())));
            }
        }
    }

    #[test]
    fn invalid_order_is_reported_without_verification() {
        let f2 = zoo::fixture_fig2();
        let emb = identity_embedding(&f2);
        let mut seq: Vec<ElementId> = f2.elements().collect();
        seq.reverse();
        let opts = IpredOptions {
            verify_order: false,
            unchecked: true,
        };
        let err = generalized_ipred(&f2, &TopoOrder::new_unchecked(seq), &emb, &opts, None).unwrap_err();
        assert!(matches!(err, AlgoError::InvalidOrder(_)));
    }

    #[test]
    fn candidate_joins_bounded_by_border_sizes() {
        let p = zoo::powerset(5, zoo::Orientation::Reversed).unwrap();
        let emb = identity_embedding(&p);
        let counters = OpCounters::new();
        let counted = crate::lattice::Counting::new(&p, &counters);
        let opts = IpredOptions {
            verify_order: false,
            unchecked: true,
        };
        let mut border_sum = 0u64;
        let mut obs = |s: &Step<'_>| border_sum += s.border_before.len() as u64;
        let run = generalized_ipred(&counted, &order(&p), &emb, &opts, Some(&mut obs)).unwrap();
        assert_eq!(run.diagram.len(), 80);
        assert_eq!(counters.snapshot().join_calls, border_sum);
    }
}

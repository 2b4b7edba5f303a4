#![allow(dead_code)]

use std::path::PathBuf;

use hasse::algorithms::{
    generalized_border, generalized_ipred, identity_embedding, label_embedding, meet_irreducible_embedding,
    BorderOptions, Embedding, IpredOptions, TraceRecorder,
};
use hasse::fca::{powerset_intent_embedding, random_context, ConceptLattice};
use hasse::io::emit_trace;
use hasse::lattice::{DynLattice, ExplicitLattice};
use hasse::traversal::TopoOrder;
use hasse::zoo::{self, Orientation};
use hasse::{ElementId, Lattice};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file")
}

pub fn order_by_names<L: Lattice + ?Sized>(l: &L, names: &[&str]) -> TopoOrder {
    let seq: Vec<ElementId> = names.iter().map(|n| l.find(n).expect("known element")).collect();
    TopoOrder::new(l, seq).expect("reverse topological")
}

/// iPred on the M3 fixture, mapped by label into the fixture with `4` under
/// `1` and `2`, in the order top, 1, 2, 3, bot.
pub fn fig1a_label_trace() -> String {
    let a = zoo::fixture_fig1a();
    let b = zoo::fixture_fig1b();
    let emb = label_embedding(&a, &b).expect("labels match");
    let order = order_by_names(&a, &["top", "1", "2", "3", "bot"]);
    let mut rec = TraceRecorder::with_codomain(&a, &b);
    let opts = IpredOptions {
        unchecked: true,
        ..Default::default()
    };
    generalized_ipred(&a, &order, &emb, &opts, Some(&mut rec)).expect("run");
    emit_trace(rec.trace())
}

/// iPred on the distributive six-element fixture with the identity
/// embedding, in the order top, 1, 2, 3, 4, bot.
pub fn fig2_identity_trace() -> String {
    let f = zoo::fixture_fig2();
    let emb = identity_embedding(&f);
    let order = order_by_names(&f, &["top", "1", "2", "3", "4", "bot"]);
    let mut rec = TraceRecorder::with_codomain(&f, &f);
    generalized_ipred(&f, &order, &emb, &IpredOptions::default(), Some(&mut rec)).expect("run");
    emit_trace(rec.trace())
}

pub struct Case {
    pub name: String,
    pub lattice: DynLattice,
    pub embedding: Embedding<DynLattice>,
}

fn case<L: Lattice + Clone + Send + Sync + 'static>(name: String, l: L, emb: Embedding<DynLattice>) -> Case {
    Case {
        name,
        lattice: Box::new(l),
        embedding: emb,
    }
}

fn identity<L: Lattice + Clone + Send + Sync + 'static>(l: &L) -> Embedding<DynLattice> {
    Embedding::new(Box::new(l.clone()), l.elements().collect())
}

fn explicit(name: &str, l: ExplicitLattice) -> Case {
    let emb = meet_irreducible_embedding(&l);
    case(name.into(), l, emb)
}

/// Random context shape for fuzz case `i`: up to 12 objects and 8
/// attributes.
pub fn context_shape(i: u64) -> (usize, usize, f64) {
    let objects = 1 + (i as usize * 7) % 12;
    let attributes = 1 + (i as usize * 5) % 8;
    let density = [0.25, 0.4, 0.5, 0.65][i as usize % 4];
    (objects, attributes, density)
}

/// Every instance of the oracle fuzz, each paired with an embedding into a
/// distributive lattice.
pub fn fuzz_cases() -> Vec<Case> {
    let mut cases = vec![
        explicit("fig1a", zoo::fixture_fig1a()),
        explicit("fig1b", zoo::fixture_fig1b()),
    ];
    let f2 = zoo::fixture_fig2();
    let emb = identity(&f2);
    cases.push(case("fig2".into(), f2, emb));
    for k in 0..=5 {
        for o in [Orientation::Standard, Orientation::Reversed] {
            let p = zoo::powerset(k, o).unwrap();
            let emb = identity(&p);
            cases.push(case(format!("powerset({k}, {o:?})"), p, emb));
        }
    }
    for n in [360, 2310] {
        let d = zoo::divisor(n).unwrap();
        let emb = identity(&d);
        cases.push(case(format!("divisor({n})"), d, emb));
    }
    let p = zoo::partition(4).unwrap();
    let emb = meet_irreducible_embedding(&p);
    cases.push(case("partition(4)".into(), p, emb));
    for i in 0..50u64 {
        let (objects, attributes, density) = context_shape(i);
        let cl = ConceptLattice::new(random_context(objects, attributes, density, 1000 + i).unwrap()).unwrap();
        let emb = powerset_intent_embedding(&cl).boxed();
        cases.push(case(format!("context {objects}x{attributes} #{i}"), cl, emb));
    }
    cases
}

pub fn border_edges(l: &dyn Lattice, order: &TopoOrder) -> std::collections::BTreeSet<(ElementId, ElementId)> {
    generalized_border(l, order, &BorderOptions::default(), None)
        .expect("border run")
        .diagram
        .edge_set()
}

pub fn ipred_edges(
    l: &dyn Lattice,
    emb: &Embedding<DynLattice>,
    order: &TopoOrder,
) -> std::collections::BTreeSet<(ElementId, ElementId)> {
    let opts = IpredOptions {
        verify_order: true,
        unchecked: true,
    };
    generalized_ipred(l, order, emb, &opts, None)
        .expect("ipred run")
        .diagram
        .edge_set()
}

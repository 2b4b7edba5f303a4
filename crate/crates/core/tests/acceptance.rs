//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{fig1a_label_trace, fig2_identity_trace, fuzz_cases, golden, Case};
use hasse::algorithms::{
    generalized_border, generalized_ipred, identity_embedding, meet_irreducible_embedding, BorderOptions, CountedMap,
    IpredOptions, Step,
};
use hasse::border::{is_border, is_proper};
use hasse::cli::{run_with, EXIT_EMBEDDING, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use hasse::io::{emit_cxt, emit_lattice_json, parse_cxt, parse_lattice_json};
use hasse::lattice::{Counting, OpCounters};
use hasse::oracle::{check_border_laws, check_laws, distributivity_witness, is_distributive, oracle_hasse, width};
use hasse::traversal::{random_linear_extension, reverse_topo_sort, Strategy, TopoOrder};
use hasse::zoo::{self, Orientation};
use hasse::{JoinSemilattice, Lattice};

const ORDERS_PER_INSTANCE: u64 = 20;
const FUZZ_BUDGET: Duration = Duration::from_secs(60);
const SCALE_BUDGET: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_difference(got: &str, want: &str) -> String {
    for (i, (g, w)) in got.lines().zip(want.lines()).enumerate() {
        if g != w {
            return format!("line {}: got `{g}`, expected `{w}`", i + 1);
        }
    }
    format!("{} lines, expected {}", got.lines().count(), want.lines().count())
}

fn fig1a_label() -> Outcome {
    let got = fig1a_label_trace();
    let want = golden("fig1a_label.trace");
    ensure(got == want, || first_difference(&got, &want))?;
    Ok(format!("{} rows byte-equal", want.lines().count() - 1))
}

fn fig2_identity() -> Outcome {
    let got = fig2_identity_trace();
    let want = golden("fig2_identity.trace");
    let rows: Vec<Vec<&str>> = got.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    let row3 = &rows[3];
    ensure(row3[2] == "{top,2}" && row3[3] == "{(3,2)}", || {
        format!("row 3 candidates {} added {}", row3[2], row3[3])
    })?;
    let last = rows.last().unwrap()[4..].join(",");
    ensure(got == want, || {
        format!(
            "{}; final LC row ({last}), expected (4,bot,bot,bot,bot,top)",
            first_difference(&got, &want)
        )
    })?;
    Ok(format!("{} rows byte-equal", want.lines().count() - 1))
}

fn counterexample() -> Outcome {
    let a = zoo::fixture_fig1a();
    let order = reverse_topo_sort(&a, &Strategy::AboveCount).map_err(|e| e.to_string())?;
    let opts = IpredOptions {
        unchecked: true,
        ..Default::default()
    };
    let id = generalized_ipred(&a, &order, &identity_embedding(&a), &opts, None).map_err(|e| e.to_string())?;
    let three = a.find("3").unwrap();
    ensure(id.diagram.len() == 5, || {
        format!("identity gave {} edges", id.diagram.len())
    })?;
    ensure(!id.diagram.contains(three, a.top()), || "identity found (3,top)".into())?;
    let mi = generalized_ipred(
        &a,
        &order,
        &meet_irreducible_embedding(&a),
        &IpredOptions::default(),
        None,
    )
    .map_err(|e| e.to_string())?;
    ensure(mi.diagram.edge_set() == oracle_hasse(&a).edge_set(), || {
        format!("meet-irreducible gave {} edges", mi.diagram.len())
    })?;
    Ok("identity 5 edges without (3,top), meet-irreducible 6".into())
}

fn orders(l: &dyn Lattice) -> Vec<TopoOrder> {
    (0..ORDERS_PER_INSTANCE)
        .map(|s| random_linear_extension(l, s))
        .collect()
}

fn fuzz(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for c in cases {
        let l = &*c.lattice;
        let want = oracle_hasse(l).edge_set();
        for (seed, order) in orders(l).iter().enumerate() {
            let b = common::border_edges(l, order);
            let i = common::ipred_edges(l, &c.embedding, order);
            ensure(b == want, || {
                format!("{} seed {seed}: border differs from oracle", c.name)
            })?;
            ensure(i == want, || {
                format!("{} seed {seed}: ipred differs from oracle", c.name)
            })?;
            runs += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < FUZZ_BUDGET, || format!("took {took:.1?}"))?;
    Ok(format!("{} instances, {runs} orders, {took:.1?}", cases.len()))
}

fn border_theory(cases: &[Case]) -> Outcome {
    let mut steps = 0usize;
    for c in cases {
        let l = &*c.lattice;
        let h = oracle_hasse(l);
        let w = width(l);
        for (seed, order) in orders(l).iter().enumerate() {
            let report = check_border_laws(l, order, w);
            ensure(report.ok(), || format!("{} seed {seed}: {report}", c.name))?;
            let mut bad: Option<String> = None;
            let mut obs = |s: &Step<'_>| {
                if bad.is_some() {
                    return;
                }
                let x = s.element;
                if !is_border(l, s.border_before, x, h.upper_covers(x)) {
                    bad = Some(format!("not a border at {}", l.name(x)));
                } else if !is_proper(l, s.border_before) || !is_proper(l, s.border_after) {
                    bad = Some(format!("border not an antichain at {}", l.name(x)));
                } else if s.border_before.len() > w || s.border_after.len() > w {
                    bad = Some(format!("border wider than {w} at {}", l.name(x)));
                }
                steps += 1;
            };
            generalized_border(l, order, &BorderOptions::default(), Some(&mut obs)).map_err(|e| e.to_string())?;
            let opts = IpredOptions {
                unchecked: true,
                ..Default::default()
            };
            generalized_ipred(l, order, &c.embedding, &opts, Some(&mut obs)).map_err(|e| e.to_string())?;
            if let Some(msg) = bad {
                return Err(format!("{} seed {seed}: {msg}", c.name));
            }
        }
    }
    Ok(format!("{steps} steps checked"))
}

struct Counts {
    candidate_joins: u64,
    total_joins: u64,
    border_leq: u64,
    border_joins: u64,
    edges: u64,
}

fn count(c: &Case, order: &TopoOrder) -> Result<Counts, String> {
    let l = &*c.lattice;
    let lc = OpCounters::new();
    let cc = OpCounters::new();
    let counted = Counting::new(l, &lc);
    let map = CountedMap::new(&c.embedding, &cc);
    let opts = IpredOptions {
        verify_order: false,
        unchecked: true,
    };
    let run = generalized_ipred(&counted, order, &map, &opts, None).map_err(|e| e.to_string())?;
    let (ls, cs) = (lc.snapshot(), cc.snapshot());

    let bc = OpCounters::new();
    let counted = Counting::new(l, &bc);
    generalized_border(&counted, order, &BorderOptions { verify_order: false }, None).map_err(|e| e.to_string())?;
    let bs = bc.snapshot();
    Ok(Counts {
        candidate_joins: ls.join_calls,
        total_joins: ls.join_calls + cs.join_calls,
        border_leq: bs.leq_calls,
        border_joins: bs.join_calls,
        edges: run.diagram.len() as u64,
    })
}

fn complexity(cases: &[Case]) -> Outcome {
    let mut checked = 0;
    for c in cases {
        let n = c.lattice.size() as u64;
        let w = width(&*c.lattice) as u64;
        for (seed, order) in orders(&*c.lattice).iter().enumerate() {
            let k = count(c, order)?;
            let at = || format!("{} seed {seed}", c.name);
            ensure(k.candidate_joins <= n * w, || {
                format!("{}: candidate joins {} > {}", at(), k.candidate_joins, n * w)
            })?;
            ensure(k.total_joins <= n * w + 2 * k.edges, || {
                format!("{}: total joins {} > {}", at(), k.total_joins, n * w + 2 * k.edges)
            })?;
            ensure(k.border_leq <= n * w * w, || {
                format!("{}: border comparisons {} > {}", at(), k.border_leq, n * w * w)
            })?;
            checked += 1;
        }
    }
    let p8 = zoo::powerset(8, Orientation::Standard).unwrap();
    let case = Case {
        name: "powerset(8)".into(),
        embedding: hasse::Embedding::new(Box::new(p8.clone()), p8.elements().collect()),
        lattice: Box::new(p8),
    };
    let order = reverse_topo_sort(&*case.lattice, &Strategy::AboveCount).map_err(|e| e.to_string())?;
    let k = count(&case, &order)?;
    let border_ops = k.border_joins + k.border_leq;
    ensure(k.total_joins < border_ops, || {
        format!(
            "powerset(8): ipred joins {} >= border joins+comparisons {border_ops}",
            k.total_joins
        )
    })?;
    Ok(format!(
        "{checked} runs within bounds; powerset(8) ipred joins {} < border {border_ops}",
        k.total_joins
    ))
}

fn laws(cases: &[Case]) -> Outcome {
    let mut instances = 0;
    for c in cases {
        let l = &*c.lattice;
        let report = check_laws(l, Some(&c.embedding));
        ensure(report.ok(), || format!("{}: {report}", c.name))?;
        instances += 1;
    }
    let larger: Vec<(String, hasse::lattice::DynLattice)> = vec![
        (
            "powerset(8)".into(),
            Box::new(zoo::powerset(8, Orientation::Reversed).unwrap()),
        ),
        ("divisor(720720)".into(), Box::new(zoo::divisor(720720).unwrap())),
        ("partition(5)".into(), Box::new(zoo::partition(5).unwrap())),
        ("partition(6)".into(), Box::new(zoo::partition(6).unwrap())),
    ];
    for (name, l) in &larger {
        let emb = meet_irreducible_embedding(&**l);
        let report = check_laws(&**l, Some(&emb));
        ensure(report.ok(), || format!("{name}: {report}"))?;
        let order = random_linear_extension(&**l, 7);
        let report = check_border_laws(&**l, &order, width(&**l));
        ensure(report.ok(), || format!("{name}: {report}"))?;
        instances += 1;
    }
    let a = zoo::fixture_fig1a();
    let witness = distributivity_witness(&a).ok_or("fig1a reported distributive")?;
    let [x, y, z] = witness;
    ensure(a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)), || {
        "fig1a witness does not violate distributivity".into()
    })?;
    ensure(is_distributive(&zoo::fixture_fig2()), || {
        "fig2 reported non-distributive".into()
    })?;
    for k in 0..=6 {
        for o in [Orientation::Standard, Orientation::Reversed] {
            ensure(is_distributive(&zoo::powerset(k, o).unwrap()), || {
                format!("powerset({k}) non-distributive")
            })?;
        }
    }
    Ok(format!(
        "{instances} instances; fig1a witness ({}, {}, {})",
        a.name(x),
        a.name(y),
        a.name(z)
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn scale() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("powerset10.json");
    fs::write(
        &path,
        emit_lattice_json(&zoo::powerset(10, Orientation::Standard).unwrap()),
    )
    .map_err(|e| e.to_string())?;
    let p = path.to_str().unwrap();

    let start = Instant::now();
    let (code, out) = cli(&["hasse", "diagram", "--algo", "ipred", "--input", p, "--out", "json"]);
    let took = start.elapsed();
    ensure(code == EXIT_OK, || format!("exit code {code}"))?;
    ensure(took < SCALE_BUDGET, || format!("took {took:.1?}"))?;

    let edges: BTreeSet<(String, String)> = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let l = parse_lattice_json(&fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
    let want: BTreeSet<(String, String)> = oracle_hasse(&l).named_edges(&l).into_iter().collect();
    ensure(l.size() == 1024, || format!("{} elements", l.size()))?;
    let w = width(&l);
    ensure(w == 252, || format!("width {w}"))?;
    ensure(edges.len() == 5120, || format!("{} edges", edges.len()))?;
    ensure(edges == want, || "edges differ from oracle".into())?;
    Ok(format!("1024 elements, width 252, 5120 edges in {took:.1?}"))
}

fn formats() -> Outcome {
    for name in ["fig1a.json", "fig2.json"] {
        let text = fs::read_to_string(common::data(name)).unwrap();
        let l = parse_lattice_json(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(emit_lattice_json(&l) == text, || format!("{name} does not round-trip"))?;
    }
    let text = fs::read_to_string(common::data("contranominal4.cxt")).unwrap();
    let ctx = parse_cxt(&text).map_err(|e| e.to_string())?;
    ensure(emit_cxt(&ctx) == text, || {
        "contranominal4.cxt does not round-trip".into()
    })?;

    let path = |n: &str| common::data(n).to_str().unwrap().to_string();
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["diagram".into(), "--bogus".into()], EXIT_USAGE),
        (
            vec![
                "diagram".into(),
                "--algo".into(),
                "fast".into(),
                "--input".into(),
                path("fig2.json"),
            ],
            EXIT_USAGE,
        ),
        (
            vec!["check".into(), "--input".into(), path("truncated.json")],
            EXIT_INPUT,
        ),
        (vec!["check".into(), "--input".into(), path("bowtie.json")], EXIT_INPUT),
        (vec!["check".into(), "--input".into(), path("bad_char.cxt")], EXIT_INPUT),
        (vec!["check".into(), "--input".into(), path("missing.json")], EXIT_INPUT),
        (
            vec![
                "diagram".into(),
                "--input".into(),
                path("fig1a.json"),
                "--embedding".into(),
                "identity".into(),
            ],
            EXIT_EMBEDDING,
        ),
        (
            vec![
                "diagram".into(),
                "--input".into(),
                path("fig2.json"),
                "--embedding".into(),
                "identity".into(),
            ],
            EXIT_OK,
        ),
    ];
    for (args, want) in &cases {
        let mut full = vec!["hasse"];
        full.extend(args.iter().map(String::as_str));
        let (code, _) = cli(&full);
        ensure(code == *want, || {
            format!("`{}` exited {code}, expected {want}", args.join(" "))
        })?;
    }
    Ok(format!("3 files byte-stable, {} exit codes", cases.len()))
}

fn main() -> ExitCode {
    let cases = fuzz_cases();
    let criteria: Vec<Criterion<'_>> = vec![
        ("golden trace, M3 into the six-element codomain", Box::new(fig1a_label)),
        (
            "golden trace, distributive six-element fixture",
            Box::new(fig2_identity),
        ),
        ("identity embedding on M3 misses (3,top)", Box::new(counterexample)),
        ("border = ipred = oracle fuzz", Box::new(|| fuzz(&cases))),
        (
            "border invariants along every sweep",
            Box::new(|| border_theory(&cases)),
        ),
        ("operation count bounds", Box::new(|| complexity(&cases))),
        ("law suite and distributivity", Box::new(|| laws(&cases))),
        ("powerset(10) through the CLI", Box::new(scale)),
        ("format round-trips and exit codes", Box::new(formats)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

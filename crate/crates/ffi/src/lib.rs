//! C interface to `hasse-core`.
//!
//! Lattices and diagrams are opaque handles created by `hasse_*` functions
//! and released with the matching `*_free`. Fallible calls return a
//! [`HasseStatus`]; on failure [`hasse_last_error`] describes the most recent
//! error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hasse::algorithms::{
    generalized_border, generalized_ipred, meet_irreducible_embedding, AlgoError, BorderOptions, Embedding,
    IpredOptions,
};
use hasse::fca::{powerset_intent_embedding, ConceptLattice};
use hasse::io::bench::Instance;
use hasse::io::{emit_dot, emit_edges_json, parse_cxt, parse_lattice_json};
use hasse::lattice::{DynLattice, ExplicitLattice};
use hasse::oracle::{oracle_hasse, width};
use hasse::traversal::{reverse_topo_sort, Strategy};
use hasse::zoo;
use hasse::{HasseDiagram as Diagram, JoinSemilattice, Lattice};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HasseStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    EmbeddingRejected = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HasseAlgorithm {
    Border = 0,
    Ipred = 1,
    Oracle = 2,
}

/// A lattice together with the embedding iPred runs with.
pub struct HasseLattice {
    lattice: DynLattice,
    embedding: Embedding<DynLattice>,
    names: Vec<CString>,
}

pub struct HasseDiagram {
    diagram: Diagram,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

type Failure = (HasseStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HasseStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HasseStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HasseStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((HasseStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (HasseStatus::InvalidUtf8, e.to_string()))
}

fn parse_err(e: impl ToString) -> Failure {
    (HasseStatus::Parse, e.to_string())
}

fn boxed<L: Lattice + Clone + Send + Sync + 'static>(l: L, embedding: Embedding<DynLattice>) -> HasseLattice {
    let names = l
        .elements()
        .map(|x| CString::new(l.name(x).replace('\0', " ")).expect("no interior nul"))
        .collect();
    HasseLattice {
        lattice: Box::new(l),
        embedding,
        names,
    }
}

fn explicit(l: ExplicitLattice) -> HasseLattice {
    let emb = meet_irreducible_embedding(&l);
    boxed(l, emb)
}

fn concepts(cl: ConceptLattice) -> HasseLattice {
    let emb = powerset_intent_embedding(&cl).boxed();
    boxed(cl, emb)
}

unsafe fn publish<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((HasseStatus::NullArgument, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or((HasseStatus::NullArgument, "null handle".into()))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hasse_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses lattice JSON. Lattices use the meet-irreducible embedding.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_from_json(json: *const c_char, out: *mut *mut HasseLattice) -> HasseStatus {
    guard(|| {
        let l = parse_lattice_json(text(json)?).map_err(parse_err)?;
        publish(out, explicit(l))
    })
}

/// Parses a Burmeister context and builds its concept lattice, embedded by
/// intents.
///
/// # Safety
/// `cxt` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_from_cxt(cxt: *const c_char, out: *mut *mut HasseLattice) -> HasseStatus {
    guard(|| {
        let ctx = parse_cxt(text(cxt)?).map_err(parse_err)?;
        let cl = ConceptLattice::new(ctx).map_err(parse_err)?;
        publish(out, concepts(cl))
    })
}

/// `fig1a`, `fig1b` or `fig2`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_fixture(name: *const c_char, out: *mut *mut HasseLattice) -> HasseStatus {
    guard(|| {
        let l = match text(name)? {
            "fig1a" => zoo::fixture_fig1a(),
            "fig1b" => zoo::fixture_fig1b(),
            "fig2" => zoo::fixture_fig2(),
            other => return Err((HasseStatus::InvalidArgument, format!("unknown fixture `{other}`"))),
        };
        publish(out, explicit(l))
    })
}

/// A generated family member such as `powerset:4`, `divisor:360`,
/// `partition:4` or `random-context:10x6:0.4:7`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_generate(spec: *const c_char, out: *mut *mut HasseLattice) -> HasseStatus {
    guard(|| {
        let inst: Instance = text(spec)?
            .parse()
            .map_err(|e: hasse::io::bench::BenchError| (HasseStatus::InvalidArgument, e.to_string()))?;
        let (lattice, embedding) = inst
            .build()
            .map_err(|e| (HasseStatus::InvalidArgument, e.to_string()))?;
        let names = lattice
            .elements()
            .map(|x| CString::new(lattice.name(x).replace('\0', " ")).expect("no interior nul"))
            .collect();
        publish(
            out,
            HasseLattice {
                lattice,
                embedding,
                names,
            },
        )
    })
}

/// Makes iPred map every element to itself. Computing with iPred then
/// fails with `EmbeddingRejected` unless the lattice is distributive.
///
/// # Safety
/// `l` must be a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_use_identity_embedding(l: *mut HasseLattice) -> HasseStatus {
    guard(|| {
        let h = l.as_mut().ok_or((HasseStatus::NullArgument, "null handle".into()))?;
        let image = h.lattice.elements().collect();
        let copy = ExplicitLattice::from_lattice(&*h.lattice);
        h.embedding = Embedding::new(Box::new(copy), image);
        Ok(())
    })
}

/// # Safety
/// `l` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_free(l: *mut HasseLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of elements, 0 for a null handle.
///
/// # Safety
/// `l` must be null or a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_size(l: *const HasseLattice) -> usize {
    l.as_ref().map_or(0, |l| l.lattice.size())
}

/// Maximum antichain size, 0 for a null handle.
///
/// # Safety
/// `l` must be null or a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_width(l: *const HasseLattice) -> usize {
    l.as_ref().map_or(0, |l| width(&*l.lattice))
}

/// Name of element `index`, or null when out of range. Owned by the handle.
///
/// # Safety
/// `l` must be null or a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn hasse_lattice_element_name(l: *const HasseLattice, index: usize) -> *const c_char {
    l.as_ref()
        .and_then(|l| l.names.get(index))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Builds the Hasse diagram along the default reverse topological order.
/// iPred validates the lattice's embedding first and fails with
/// `EmbeddingRejected` when it does not hold.
///
/// # Safety
/// `l` must be a live lattice handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_diagram_compute(
    l: *const HasseLattice,
    algorithm: HasseAlgorithm,
    out: *mut *mut HasseDiagram,
) -> HasseStatus {
    guard(|| {
        let h = handle(l)?;
        let lat = &*h.lattice;
        let algo_err = |e: AlgoError| match e {
            AlgoError::EmbeddingInvalid(r) => (HasseStatus::EmbeddingRejected, r.to_string()),
            other => (HasseStatus::InvalidArgument, other.to_string()),
        };
        let diagram = match algorithm {
            HasseAlgorithm::Oracle => oracle_hasse(lat),
            HasseAlgorithm::Border | HasseAlgorithm::Ipred => {
                let order = reverse_topo_sort(lat, &Strategy::AboveCount)
                    .map_err(|e| (HasseStatus::InvalidArgument, e.to_string()))?;
                let run = if algorithm == HasseAlgorithm::Border {
                    generalized_border(lat, &order, &BorderOptions::default(), None)
                } else {
                    generalized_ipred(lat, &order, &h.embedding, &IpredOptions::default(), None)
                };
                run.map_err(algo_err)?.diagram
            }
        };
        publish(out, HasseDiagram { diagram })
    })
}

/// # Safety
/// `d` must be null or a diagram handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hasse_diagram_free(d: *mut HasseDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of cover edges, 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn hasse_diagram_edge_count(d: *const HasseDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.diagram.len())
}

/// Element indices of edge `index` as `lower`, `upper`.
///
/// # Safety
/// `d` must be a live diagram handle; `lower` and `upper` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_diagram_edge(
    d: *const HasseDiagram,
    index: usize,
    lower: *mut usize,
    upper: *mut usize,
) -> HasseStatus {
    guard(|| {
        let d = handle(d)?;
        if lower.is_null() || upper.is_null() {
            return Err((HasseStatus::NullArgument, "null output pointer".into()));
        }
        let &(a, b) = d
            .diagram
            .edges()
            .get(index)
            .ok_or((HasseStatus::OutOfRange, format!("edge {index} of {}", d.diagram.len())))?;
        *lower = a.index();
        *upper = b.index();
        Ok(())
    })
}

enum Rendering {
    Dot,
    Json,
}

unsafe fn render(
    l: *const HasseLattice,
    d: *const HasseDiagram,
    kind: Rendering,
    out: *mut *mut c_char,
) -> HasseStatus {
    guard(|| {
        let (l, d) = (handle(l)?, handle(d)?);
        if out.is_null() {
            return Err((HasseStatus::NullArgument, "null output pointer".into()));
        }
        if d.diagram.node_count() != l.lattice.size() {
            return Err((
                HasseStatus::InvalidArgument,
                "diagram belongs to another lattice".into(),
            ));
        }
        let s = match kind {
            Rendering::Dot => emit_dot(&d.diagram, &*l.lattice),
            Rendering::Json => emit_edges_json(&d.diagram, &*l.lattice),
        };
        *out = CString::new(s)
            .map_err(|e| (HasseStatus::InvalidArgument, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Graphviz text for `d`, named by `l`. Release with [`hasse_string_free`].
///
/// # Safety
/// `l` and `d` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_diagram_to_dot(
    l: *const HasseLattice,
    d: *const HasseDiagram,
    out: *mut *mut c_char,
) -> HasseStatus {
    render(l, d, Rendering::Dot, out)
}

/// Sorted `[lower, upper]` name pairs as JSON. Release with
/// [`hasse_string_free`].
///
/// # Safety
/// `l` and `d` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hasse_diagram_to_json(
    l: *const HasseLattice,
    d: *const HasseDiagram,
    out: *mut *mut c_char,
) -> HasseStatus {
    render(l, d, Rendering::Json, out)
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hasse_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

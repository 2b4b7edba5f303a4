use serde::Serialize;

use crate::algorithms::{HasseDiagram, Trace};
use crate::lattice::{CounterSnapshot, JoinSemilattice};

fn dot_quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn json_quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// `digraph hasse {`, one `"lower" -> "upper";` line per edge sorted by
/// name, `}`.
pub fn emit_dot<L: JoinSemilattice + ?Sized>(h: &HasseDiagram, l: &L) -> String {
    let mut out = String::from("digraph hasse {\n");
    for (a, b) in h.named_edges(l) {
        out.push_str(&format!("{} -> {};\n", dot_quoted(&a), dot_quoted(&b)));
    }
    out.push_str("}\n");
    out
}

/// Sorted `[lower, upper]` name pairs on one line.
pub fn emit_edges_json<L: JoinSemilattice + ?Sized>(h: &HasseDiagram, l: &L) -> String {
    let pairs: Vec<String> = h
        .named_edges(l)
        .iter()
        .map(|(a, b)| format!("[{}, {}]", json_quoted(a), json_quoted(b)))
        .collect();
    format!("[{}]\n", pairs.join(", "))
}

fn set(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

/// Tab-separated: a header, then one row per processed element with the
/// border after the step, the candidates, the added edges and, when
/// present, the LC row (`-` for elements not yet reached).
pub fn emit_trace(trace: &Trace) -> String {
    let mut header = vec!["x".to_string(), "B".into(), "cand".into(), "added".into()];
    header.extend(trace.lc_columns.iter().map(|c| format!("LC[{c}]")));
    let mut out = header.join("\t");
    out.push('\n');
    for r in &trace.records {
        let added: Vec<String> = r.added.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let mut row = vec![r.element.clone(), set(&r.border), set(&r.candidates), set(&added)];
        if let Some(lc) = &r.lc {
            row.extend(lc.iter().map(|v| v.clone().unwrap_or_else(|| "-".into())));
        }
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub leq: u64,
    pub join: u64,
    pub meet: u64,
    pub f: u64,
}

impl From<CounterSnapshot> for OpCounts {
    fn from(s: CounterSnapshot) -> Self {
        OpCounts {
            leq: s.leq_calls,
            join: s.join_calls,
            meet: s.meet_calls,
            f: s.f_calls,
        }
    }
}

/// Measurements of one diagram construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStats {
    pub instance: String,
    pub algorithm: String,
    pub n: usize,
    pub width: usize,
    pub edges: usize,
    pub counters: OpCounts,
    pub max_border: usize,
    pub wall_ms: f64,
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_stats<T: Serialize + ?Sized>(stats: &T) -> String {
    let mut s = serde_json::to_string_pretty(stats).expect("stats serialize");
    s.push('\n');
    s
}

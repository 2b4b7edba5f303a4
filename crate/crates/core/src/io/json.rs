use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::lattice::{ExplicitLattice, Lattice, RelationKind};
use crate::oracle::oracle_hasse;

/// On-disk lattice description. Both relation kinds are closed reflexively
/// and transitively when loaded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub order: RelationKind,
    pub pairs: Vec<(String, String)>,
}

pub fn parse_lattice_json(text: &str) -> Result<ExplicitLattice, FormatError> {
    let file: LatticeFile =
        serde_json::from_str(text).map_err(|e| FormatError::syntax(e.line(), e.column(), e.to_string()))?;
    Ok(ExplicitLattice::from_relation(&file.elements, &file.pairs)?)
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Canonical form: elements in index order, cover pairs sorted by
/// `(lower, upper)` index, two-space indentation, trailing newline.
pub fn emit_lattice_json<L: Lattice + ?Sized>(l: &L) -> String {
    let names: Vec<String> = l.elements().map(|e| quoted(&l.name(e))).collect();
    let mut edges = oracle_hasse(l).edges().to_vec();
    edges.sort();
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"elements\": [{}],\n", names.join(", ")));
    out.push_str("  \"order\": \"covers\",\n");
    if edges.is_empty() {
        out.push_str("  \"pairs\": []\n");
    } else {
        out.push_str("  \"pairs\": [\n");
        let lines: Vec<String> = edges
            .iter()
            .map(|&(a, b)| format!("    [{}, {}]", names[a.0], names[b.0]))
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ]\n");
    }
    out.push_str("}\n");
    out
}

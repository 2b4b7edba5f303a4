use std::collections::BTreeSet;

use crate::lattice::{ElementId, JoinSemilattice};

/// The cover relation as a set of `(lower, upper)` pairs, with per-element
/// upper and lower cover views.
#[derive(Clone, Debug, Default)]
pub struct HasseDiagram {
    edges: Vec<(ElementId, ElementId)>,
    upper: Vec<Vec<ElementId>>,
    lower: Vec<Vec<ElementId>>,
}

impl HasseDiagram {
    pub fn new(n: usize) -> Self {
        HasseDiagram {
            edges: Vec::new(),
            upper: vec![Vec::new(); n],
            lower: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (ElementId, ElementId)>) -> Self {
        let mut h = HasseDiagram::new(n);
        for (lo, hi) in edges {
            h.add_edge(lo, hi);
        }
        h
    }

    pub fn add_edge(&mut self, lower: ElementId, upper: ElementId) {
        self.edges.push((lower, upper));
        self.upper[lower.0].push(upper);
        self.lower[upper.0].push(lower);
    }

    /// Edges in emission order.
    pub fn edges(&self) -> &[(ElementId, ElementId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.upper.len()
    }

    pub fn upper_covers(&self, x: ElementId) -> &[ElementId] {
        &self.upper[x.0]
    }

    pub fn lower_covers(&self, y: ElementId) -> &[ElementId] {
        &self.lower[y.0]
    }

    pub fn contains(&self, lower: ElementId, upper: ElementId) -> bool {
        self.upper[lower.0].contains(&upper)
    }

    pub fn edge_set(&self) -> BTreeSet<(ElementId, ElementId)> {
        self.edges.iter().copied().collect()
    }

    /// Edges by name, sorted lexicographically by `(lower, upper)`.
    pub fn named_edges<L: JoinSemilattice + ?Sized>(&self, l: &L) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| (l.name(a).into_owned(), l.name(b).into_owned()))
            .collect();
        out.sort();
        out
    }
}

impl PartialEq for HasseDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.node_count() == other.node_count() && self.edge_set() == other.edge_set()
    }
}

impl Eq for HasseDiagram {}

use serde::Serialize;

use crate::lattice::{ElementId, JoinSemilattice};

/// Snapshot handed to a [`StepObserver`] at the end of each iteration.
#[derive(Clone, Copy, Debug)]
pub struct Step<'a> {
    /// Position in the traversal, from 0.
    pub index: usize,
    pub element: ElementId,
    pub border_before: &'a [ElementId],
    /// Distinct joins `x ∨ y`, `y` in the border, in border order.
    pub candidates: &'a [ElementId],
    /// Upper covers found for `element`, in emission order.
    pub cover: &'a [ElementId],
    pub border_after: &'a [ElementId],
    /// Full LC table (codomain elements), `None` for unprocessed elements.
    /// Absent for the Border algorithm.
    pub lc: Option<&'a [Option<ElementId>]>,
}

pub trait StepObserver {
    fn on_step(&mut self, step: &Step<'_>);
}

impl<F: FnMut(&Step<'_>)> StepObserver for F {
    fn on_step(&mut self, step: &Step<'_>) {
        self(step)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub element: String,
    pub border: Vec<String>,
    pub candidates: Vec<String>,
    /// `(lower, upper)` edges added in this iteration.
    pub added: Vec<(String, String)>,
    pub lc: Option<Vec<Option<String>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    /// Element names heading the LC columns; empty without LC.
    pub lc_columns: Vec<String>,
    pub records: Vec<TraceRecord>,
}

/// Observer that turns steps into named [`TraceRecord`]s. Member lists are
/// sorted by element index.
pub struct TraceRecorder<'a, L: ?Sized> {
    lattice: &'a L,
    lc_name: Option<Box<dyn Fn(ElementId) -> String + 'a>>,
    trace: Trace,
}

impl<'a, L: JoinSemilattice + ?Sized> TraceRecorder<'a, L> {
    /// Recorder without LC columns.
    pub fn new(lattice: &'a L) -> Self {
        TraceRecorder {
            lattice,
            lc_name: None,
            trace: Trace::default(),
        }
    }

    /// Recorder whose LC entries are named in `codomain`.
    pub fn with_codomain<C: JoinSemilattice + ?Sized>(lattice: &'a L, codomain: &'a C) -> Self {
        TraceRecorder {
            lattice,
            lc_name: Some(Box::new(move |x| codomain.name(x).into_owned())),
            trace: Trace {
                lc_columns: lattice.elements().map(|e| lattice.name(e).into_owned()).collect(),
                records: Vec::new(),
            },
        }
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn into_trace(self) -> Trace {
        self.trace
    }

    fn sorted_names(&self, xs: &[ElementId]) -> Vec<String> {
        let mut v = xs.to_vec();
        v.sort();
        v.iter().map(|&x| self.lattice.name(x).into_owned()).collect()
    }
}

impl<L: JoinSemilattice + ?Sized> StepObserver for TraceRecorder<'_, L> {
    fn on_step(&mut self, step: &Step<'_>) {
        let mut cover = step.cover.to_vec();
        cover.sort();
        let x = self.lattice.name(step.element).into_owned();
        let added = cover
            .iter()
            .map(|&z| (x.clone(), self.lattice.name(z).into_owned()))
            .collect();
        let lc = match (&self.lc_name, step.lc) {
            (Some(name), Some(lc)) => Some(lc.iter().map(|v| v.map(name)).collect()),
            _ => None,
        };
        let record = TraceRecord {
            element: x,
            border: self.sorted_names(step.border_after),
            candidates: self.sorted_names(step.candidates),
            added,
            lc,
        };
        self.trace.records.push(record);
    }
}

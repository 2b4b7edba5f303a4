//! Formal contexts, the double-prime closure, NextClosure enumeration of
//! intents and the concept lattice over them.
//!
//! Concept-lattice order is reverse inclusion of intents: `x <= y` iff
//! `x ⊇ y`, join is intersection, meet is the closure of the union, the top
//! is `closure(∅)` and the bottom is the full attribute set.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::algorithms::Embedding;
use crate::lattice::{ElementId, JoinSemilattice, Lattice};
use crate::zoo::{Orientation, PowersetLattice};

/// Contexts are stored with one `u64` row per object.
pub const MAX_CONTEXT_ATTRIBUTES: usize = 64;
/// NextClosure enumeration limit.
pub const MAX_ENUMERATION_ATTRIBUTES: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FcaError {
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("duplicate {axis} name `{name}`")]
    DuplicateName { axis: &'static str, name: String },
    #[error("incidence has {rows} row(s) for {objects} object(s)")]
    DimensionMismatch { rows: usize, objects: usize },
    #[error("{what} = {value} exceeds the supported maximum {max}")]
    ParameterTooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },
}

/// Closed attribute set, as a bitmask over the context's attribute columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Intent(pub u64);

impl Intent {
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, attr: usize) -> bool {
        self.0 >> attr & 1 == 1
    }

    pub fn is_superset_of(self, other: Intent) -> bool {
        self.0 & other.0 == other.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<u64>,
}

fn check_unique(axis: &'static str, names: &[String]) -> Result<(), FcaError> {
    let mut seen = HashSet::with_capacity(names.len());
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(FcaError::DuplicateName { axis, name: n.clone() });
        }
    }
    Ok(())
}

impl FormalContext {
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: Vec<Vec<bool>>) -> Result<Self, FcaError> {
        if attributes.len() > MAX_CONTEXT_ATTRIBUTES {
            return Err(FcaError::ParameterTooLarge {
                what: "attribute count",
                value: attributes.len(),
                max: MAX_CONTEXT_ATTRIBUTES,
            });
        }
        check_unique("object", &objects)?;
        check_unique("attribute", &attributes)?;
        if incidence.len() != objects.len() || incidence.iter().any(|r| r.len() != attributes.len()) {
            return Err(FcaError::DimensionMismatch {
                rows: incidence.len(),
                objects: objects.len(),
            });
        }
        let rows = incidence
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &b)| if b { m | 1 << i } else { m })
            })
            .collect();
        Ok(FormalContext {
            objects,
            attributes,
            rows,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn has(&self, object: usize, attribute: usize) -> bool {
        self.rows[object] >> attribute & 1 == 1
    }

    pub fn row(&self, object: usize) -> u64 {
        self.rows[object]
    }

    pub fn full(&self) -> u64 {
        match self.attributes.len() {
            0 => 0,
            m => u64::MAX >> (64 - m),
        }
    }

    /// Attributes shared by every object that has all of `attrs`.
    pub fn closure(&self, attrs: u64) -> Intent {
        Intent(
            self.rows
                .iter()
                .filter(|&&r| r & attrs == attrs)
                .fold(self.full(), |acc, &r| acc & r),
        )
    }

    pub fn closure_of_names<S: AsRef<str>>(&self, attrs: &[S]) -> Result<Intent, FcaError> {
        Ok(self.closure(self.attribute_mask(attrs)?))
    }

    pub fn attribute_mask<S: AsRef<str>>(&self, attrs: &[S]) -> Result<u64, FcaError> {
        attrs.iter().try_fold(0u64, |m, a| {
            let a = a.as_ref();
            let i = self
                .attributes
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| FcaError::UnknownAttribute(a.to_string()))?;
            Ok(m | 1 << i)
        })
    }

    pub fn intent_name(&self, intent: Intent) -> String {
        let parts: Vec<&str> = (0..self.attributes.len())
            .filter(|&i| intent.contains(i))
            .map(|i| self.attributes[i].as_str())
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// All intents of `ctx` in lectic order (attribute 0 most significant),
/// starting at `closure(∅)` and ending at the full attribute set.
pub fn enumerate_intents(ctx: &FormalContext) -> Result<Vec<Intent>, FcaError> {
    let m = ctx.attributes().len();
    if m > MAX_ENUMERATION_ATTRIBUTES {
        return Err(FcaError::ParameterTooLarge {
            what: "attribute count",
            value: m,
            max: MAX_ENUMERATION_ATTRIBUTES,
        });
    }
    let full = ctx.full();
    let mut out = vec![ctx.closure(0)];
    let mut current = out[0].0;
    while current != full {
        current = next_closure(ctx, current).expect("the full set is always closed");
        out.push(Intent(current));
    }
    Ok(out)
}

/// Lectic successor of the closed set `a`, or `None` if `a` is the last.
fn next_closure(ctx: &FormalContext, a: u64) -> Option<u64> {
    let m = ctx.attributes().len();
    // bits below position i in lectic terms are the attributes with index < i
    for i in (0..m).rev() {
        let bit = 1u64 << i;
        if a & bit != 0 {
            continue;
        }
        let prefix = a & (bit - 1);
        let b = ctx.closure(prefix | bit).0;
        if b & (bit - 1) == prefix {
            return Some(b);
        }
    }
    None
}

/// The lattice of intents of a context.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    context: FormalContext,
    intents: Vec<Intent>,
    index: HashMap<u64, usize>,
    top: usize,
    bottom: usize,
}

impl ConceptLattice {
    pub fn new(context: FormalContext) -> Result<Self, FcaError> {
        let intents = enumerate_intents(&context)?;
        Ok(Self::from_intents(context, intents))
    }

    fn from_intents(context: FormalContext, intents: Vec<Intent>) -> Self {
        let index: HashMap<u64, usize> = intents.iter().enumerate().map(|(i, it)| (it.0, i)).collect();
        let top = index[&context.closure(0).0];
        let bottom = index[&context.full()];
        ConceptLattice {
            context,
            intents,
            index,
            top,
            bottom,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn intents(&self) -> &[Intent] {
        &self.intents
    }

    pub fn intent(&self, x: ElementId) -> Intent {
        self.intents[x.0]
    }

    pub fn id_of(&self, intent: Intent) -> Option<ElementId> {
        self.index.get(&intent.0).copied().map(ElementId)
    }
}

impl JoinSemilattice for ConceptLattice {
    fn size(&self) -> usize {
        self.intents.len()
    }

    #[inline]
    fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.intents[x.0].is_superset_of(self.intents[y.0])
    }

    #[inline]
    fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.index[&(self.intents[x.0].0 & self.intents[y.0].0)])
    }

    fn name(&self, x: ElementId) -> Cow<'_, str> {
        Cow::Owned(self.context.intent_name(self.intents[x.0]))
    }

    fn find(&self, name: &str) -> Option<ElementId> {
        let inner = name.strip_prefix('{')?.strip_suffix('}')?;
        let attrs: Vec<&str> = if inner.is_empty() {
            vec![]
        } else {
            inner.split(',').collect()
        };
        let mask = self.context.attribute_mask(&attrs).ok()?;
        self.id_of(Intent(mask))
    }
}

impl Lattice for ConceptLattice {
    fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        let union = self.intents[x.0].0 | self.intents[y.0].0;
        ElementId(self.index[&self.context.closure(union).0])
    }

    fn top(&self) -> ElementId {
        ElementId(self.top)
    }

    fn bottom(&self) -> ElementId {
        ElementId(self.bottom)
    }
}

/// Identity map from intents into the reversed powerset of the attributes.
/// Injective, and join-preserving because intents are closed under
/// intersection.
pub fn powerset_intent_embedding(cl: &ConceptLattice) -> Embedding<PowersetLattice> {
    let codomain = PowersetLattice::over(cl.context().attributes().to_vec(), Orientation::Reversed);
    let image = cl.intents().iter().map(|i| ElementId(i.0 as usize)).collect();
    Embedding::new(codomain, image)
}

/// Random context with each incidence set independently with probability
/// `density`.
pub fn random_context(objects: usize, attributes: usize, density: f64, seed: u64) -> Result<FormalContext, FcaError> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let incidence = (0..objects)
        .map(|_| (0..attributes).map(|_| rng.gen_bool(density.clamp(0.0, 1.0))).collect())
        .collect();
    FormalContext::new(
        (1..=objects).map(|i| format!("g{i}")).collect(),
        (0..attributes).map(|i| format!("m{i}")).collect(),
        incidence,
    )
}

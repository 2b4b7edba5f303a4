use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{names, Counting, DynLattice, ElementId, JoinSemilattice, Lattice, OpCounters, EXHAUSTIVE_LIMIT};
use crate::oracle::{distributivity_witness, oracle_hasse, sampled_distributivity_witness};
use crate::report::ValidationReport;
use crate::zoo::{Orientation, PowersetLattice, SetLattice};

/// Codomains up to this size get an exhaustive distributivity check during
/// embedding validation; larger ones without structural knowledge are
/// sampled.
pub const DISTRIBUTIVITY_EXHAUSTIVE_LIMIT: usize = 256;

/// A map from lattice elements into some target lattice.
pub trait JoinMap {
    type Target: Lattice + ?Sized;

    fn target(&self) -> &Self::Target;
    fn apply(&self, x: ElementId) -> ElementId;
}

/// Element-wise map into a codomain lattice, meant to be an injective
/// join-homomorphism into a distributive lattice.
#[derive(Clone, Debug)]
pub struct Embedding<C> {
    codomain: C,
    image: Vec<ElementId>,
}

impl<C> Embedding<C> {
    pub fn new(codomain: C, image: Vec<ElementId>) -> Self {
        Embedding { codomain, image }
    }

    pub fn codomain(&self) -> &C {
        &self.codomain
    }

    pub fn image(&self) -> &[ElementId] {
        &self.image
    }

    pub fn into_parts(self) -> (C, Vec<ElementId>) {
        (self.codomain, self.image)
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.image[x.0]
    }

    /// Same map, with the codomain boxed.
    pub fn boxed(self) -> Embedding<DynLattice>
    where
        C: Lattice + Send + Sync + 'static,
    {
        Embedding {
            codomain: Box::new(self.codomain),
            image: self.image,
        }
    }
}

impl<C: Lattice> JoinMap for Embedding<C> {
    type Target = C;

    fn target(&self) -> &C {
        &self.codomain
    }

    #[inline]
    fn apply(&self, x: ElementId) -> ElementId {
        self.image[x.0]
    }
}

/// Instrumented view of a [`JoinMap`]: counts map applications as `f` calls
/// and target-lattice operations through a [`Counting`] wrapper.
pub struct CountedMap<'a, M: JoinMap + ?Sized> {
    inner: &'a M,
    target: Counting<'a, M::Target>,
    counters: &'a OpCounters,
}

impl<'a, M: JoinMap + ?Sized> CountedMap<'a, M> {
    pub fn new(inner: &'a M, counters: &'a OpCounters) -> Self {
        CountedMap {
            inner,
            target: Counting::new(inner.target(), counters),
            counters,
        }
    }
}

impl<'a, M: JoinMap + ?Sized> JoinMap for CountedMap<'a, M> {
    type Target = Counting<'a, M::Target>;

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn apply(&self, x: ElementId) -> ElementId {
        self.counters.bump_f();
        self.inner.apply(x)
    }
}

/// `f = id`, codomain the lattice itself. Only valid when the lattice is
/// distributive.
pub fn identity_embedding<L: Lattice + ?Sized>(l: &L) -> Embedding<&L> {
    Embedding::new(l, l.elements().collect())
}

/// Maps each element to the codomain element carrying the same name.
pub fn label_embedding<L: Lattice + ?Sized, C: Lattice>(l: &L, codomain: C) -> Result<Embedding<C>, String> {
    let image = l
        .elements()
        .map(|x| {
            let name = l.name(x);
            codomain
                .find(&name)
                .ok_or_else(|| format!("no codomain element named `{name}`"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Embedding::new(codomain, image))
}

/// Elements with exactly one upper cover (`top` has none, so it is never
/// included), in element order.
pub fn meet_irreducibles<L: Lattice + ?Sized>(l: &L) -> Vec<ElementId> {
    let h = oracle_hasse(l);
    l.elements().filter(|&x| h.upper_covers(x).len() == 1).collect()
}

/// `f(x) = {m meet-irreducible : x <= m}` into the reversed powerset over the
/// meet-irreducibles, where join is intersection. Every element is the meet
/// of the meet-irreducibles above it, so `f` is injective; it preserves
/// joins because `x ∨ y <= m` iff `x <= m` and `y <= m`.
pub fn meet_irreducible_embedding<L: Lattice + ?Sized>(l: &L) -> Embedding<DynLattice> {
    let irr = meet_irreducibles(l);
    let labels = names(l, &irr);
    let above = |x: ElementId| {
        irr.iter()
            .enumerate()
            .filter(move |(_, &m)| l.leq(x, m))
            .map(|(i, _)| i)
    };
    if irr.len() <= 63 {
        let image = l
            .elements()
            .map(|x| ElementId(above(x).fold(0usize, |acc, i| acc | 1 << i)))
            .collect();
        Embedding::new(Box::new(PowersetLattice::over(labels, Orientation::Reversed)), image)
    } else {
        let codomain = SetLattice::new(labels);
        let image = l.elements().map(|x| codomain.intern(above(x))).collect();
        Embedding::new(Box::new(codomain), image)
    }
}

/// Checks that `emb` is usable by the iPred construction: injective, join
/// preserving (exhaustive up to 64 elements, 10,000 sampled pairs above),
/// bottom preserving, and with a distributive codomain. Failure of meet
/// preservation is recorded as a note only.
pub fn validate_embedding<L, M>(emb: &M, l: &L) -> ValidationReport
where
    L: Lattice + ?Sized,
    M: JoinMap + ?Sized,
{
    let mut report = ValidationReport::new();
    let c = emb.target();
    let n = l.size();
    let cn = |x: ElementId| c.name(x).into_owned();

    let mut first_preimage: HashMap<ElementId, ElementId> = HashMap::with_capacity(n);
    for x in l.elements() {
        if let Some(&prev) = first_preimage.get(&emb.apply(x)) {
            report.fail(
                "injectivity",
                names(l, &[prev, x]),
                format!("both map to {}", cn(emb.apply(x))),
            );
            break;
        }
        first_preimage.insert(emb.apply(x), x);
    }

    let pairs: Box<dyn Iterator<Item = (ElementId, ElementId)>> = if n <= EXHAUSTIVE_LIMIT {
        Box::new(l.elements().flat_map(|x| l.elements().map(move |y| (x, y))))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let sampled: Vec<_> = (0..10_000)
            .map(|_| (ElementId(rng.gen_range(0..n)), ElementId(rng.gen_range(0..n))))
            .collect();
        report.note("join-preservation", vec![], "checked on 10000 sampled pairs");
        Box::new(sampled.into_iter())
    };
    let mut meet_noted = false;
    for (x, y) in pairs {
        let lhs = emb.apply(l.join(x, y));
        let rhs = c.join(emb.apply(x), emb.apply(y));
        if lhs != rhs {
            report.fail(
                "join-preservation",
                names(l, &[x, y]),
                format!("f(x v y) = {} but f(x) v f(y) = {}", cn(lhs), cn(rhs)),
            );
            break;
        }
        if !meet_noted {
            let (lm, rm) = (emb.apply(l.meet(x, y)), c.meet(emb.apply(x), emb.apply(y)));
            if lm != rm {
                report.note(
                    "meet-preservation",
                    names(l, &[x, y]),
                    format!("f(x ^ y) = {} but f(x) ^ f(y) = {}", cn(lm), cn(rm)),
                );
                meet_noted = true;
            }
        }
    }

    if emb.apply(l.bottom()) != c.bottom() {
        report.fail(
            "bottom-preservation",
            names(l, &[l.bottom()]),
            format!("maps to {} instead of {}", cn(emb.apply(l.bottom())), cn(c.bottom())),
        );
    }

    match c.known_distributive() {
        Some(true) => {}
        Some(false) => report.fail("codomain-distributivity", vec![], "codomain is not distributive"),
        None => {
            let witness = if c.size() <= DISTRIBUTIVITY_EXHAUSTIVE_LIMIT {
                distributivity_witness(c)
            } else {
                report.note("codomain-distributivity", vec![], "checked on 10000 sampled triples");
                sampled_distributivity_witness(c, 10_000, 0)
            };
            if let Some(w) = witness {
                report.fail(
                    "codomain-distributivity",
                    w.iter().map(|&e| cn(e)).collect(),
                    "x ^ (y v z) != (x ^ y) v (x ^ z)",
                );
            }
        }
    }
    report
}

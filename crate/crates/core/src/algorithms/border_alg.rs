use fixedbitset::FixedBitSet;

use super::{check_order, AlgoError, Construction, HasseDiagram, Step, StepObserver};
use crate::border::{candidates, minimals, Border};
use crate::lattice::Lattice;
use crate::traversal::TopoOrder;

#[derive(Clone, Copy, Debug)]
pub struct BorderOptions {
    /// Check the order with O(n²) comparisons before running.
    pub verify_order: bool,
}

impl Default for BorderOptions {
    fn default() -> Self {
        BorderOptions { verify_order: true }
    }
}

/// Builds the Hasse diagram by taking, for each element in reverse
/// topological order, the minimal joins with the current border as its
/// upper cover.
pub fn generalized_border<L: Lattice + ?Sized>(
    l: &L,
    order: &TopoOrder,
    opts: &BorderOptions,
    mut observer: Option<&mut dyn StepObserver>,
) -> Result<Construction, AlgoError> {
    check_order(l, order, opts.verify_order)?;
    let n = l.size();
    let mut diagram = HasseDiagram::new(n);
    let mut border = Border::new(n);
    let mut seen = FixedBitSet::with_capacity(n);
    let mut max_border = 0;
    let mut total = 0u64;

    for (index, &x) in order.iter().enumerate() {
        let cand = candidates(l, x, border.iter(), &mut seen);
        let cover = minimals(l, &cand);
        total += cand.len() as u64;
        for &z in &cover {
            diagram.add_edge(x, z);
        }
        if let Some(obs) = observer.as_deref_mut() {
            let before = border.to_vec();
            border.advance(x, &cover);
            obs.on_step(&Step {
                index,
                element: x,
                border_before: &before,
                candidates: &cand,
                cover: &cover,
                border_after: &border.to_vec(),
                lc: None,
            });
        } else {
            border.advance(x, &cover);
        }
        max_border = max_border.max(border.len());
    }

    Ok(Construction {
        diagram,
        max_border,
        candidates: total,
    })
}

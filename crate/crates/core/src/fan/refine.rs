//! Common refinement of cones that share a linear span.

use std::collections::{BTreeMap, BTreeSet};

use crate::exact::{neg_vec, sign_normalized, IntVec, Sublattice};

use super::Cone;

/// Split `cone` by every hyperplane that meets its relative interior.
pub(crate) fn split_by(cone: &Cone, hyperplanes: &[IntVec]) -> Vec<Cone> {
    let mut pieces = vec![cone.clone()];
    for h in hyperplanes {
        let mut next = Vec::with_capacity(pieces.len());
        for p in pieces {
            if p.is_cut_by(h) {
                next.push(p.cut(h));
                next.push(p.cut(&neg_vec(h)));
            } else {
                next.push(p);
            }
        }
        pieces = next;
    }
    pieces
}

/// Facet hyperplanes of the given cones, up to sign.
pub(crate) fn facet_hyperplanes<'a>(cones: impl IntoIterator<Item = &'a Cone>) -> Vec<IntVec> {
    let set: BTreeSet<IntVec> = cones
        .into_iter()
        .flat_map(|c| c.facet_normals().iter().filter_map(|f| sign_normalized(f)))
        .collect();
    set.into_iter().collect()
}

/// Cells of the common refinement of each group of cones with equal span.
///
/// Within a span the cells form a fan refining every input cone; cones of
/// different spans are not subdivided along their lower-dimensional
/// crossings.
pub(crate) fn span_cells(cones: &[&Cone]) -> Vec<Cone> {
    let mut groups: BTreeMap<&Sublattice, Vec<&Cone>> = BTreeMap::new();
    for c in cones {
        groups.entry(c.span_lattice()).or_default().push(c);
    }
    let mut cells = BTreeSet::new();
    for group in groups.values() {
        let hs = facet_hyperplanes(group.iter().copied());
        let unique: BTreeSet<&Cone> = group.iter().copied().collect();
        for c in unique {
            cells.extend(split_by(c, &hs));
        }
    }
    cells.into_iter().collect()
}

//! The balancing condition for weighted fans.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::refine::{facet_hyperplanes, split_by};
use super::{Cone, TropicalCycle};
use crate::exact::{dot, smith_normal_form, IntMatrix, IntVec, Sublattice};

/// Outcome of a balancing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    Balanced,
    /// The weighted sum of normal vectors at `face` is `residual`, which is
    /// not in the lattice of the face.
    Unbalanced { face: Cone, residual: IntVec },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced)
    }
}

/// An integer vector of `span(σ)` whose value under the facet normal `f` is
/// the positive generator of `f(N_σ)`; it represents the generator of
/// `N_σ / N_τ`.
pub(crate) fn normal_generator(sigma: &Sublattice, f: &[BigInt]) -> IntVec {
    let basis = sigma.basis_rows();
    let values: IntVec = basis.iter().map(|b| dot(f, b)).collect();
    let m = IntMatrix::from_rows(values.len(), &[values]).expect("one row");
    let (u, _, v) = smith_normal_form(&m);
    // u m v = (g, 0, ...), u = ±1, so m (v e_1) u = g
    let sign = u.get(0, 0).clone();
    let n = sigma.ambient_rank();
    let mut out = vec![BigInt::zero(); n];
    for (j, b) in basis.iter().enumerate() {
        let c = v.get(j, 0) * &sign;
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += &c * x;
        }
    }
    out
}

/// Checks that at every codimension-one wall the weighted normal vectors of
/// the adjacent cones sum into the lattice of the wall.
///
/// Walls are the facets of the cones, refined among facets of equal span;
/// cones passing through a wall contribute nothing.
pub fn is_balanced(t: &TropicalCycle) -> Balance {
    if t.dim() == 0 {
        return Balance::Balanced;
    }
    let mut walls: BTreeMap<Sublattice, Vec<(Cone, IntVec)>> = BTreeMap::new();
    for (sigma, m) in t.cones() {
        for (f, tau) in sigma.facets() {
            let n = normal_generator(sigma.span_lattice(), &f);
            let contrib: IntVec = n.iter().map(|x| x * m).collect();
            walls
                .entry(tau.span_lattice().clone())
                .or_default()
                .push((tau, contrib));
        }
    }
    for (lattice, group) in &walls {
        let hs = facet_hyperplanes(group.iter().map(|(c, _)| c));
        let mut pieces: Vec<Cone> = group.iter().flat_map(|(c, _)| split_by(c, &hs)).collect();
        pieces.sort();
        pieces.dedup();
        for piece in pieces {
            let p = piece.relint_point(None);
            let mut residual = vec![BigInt::zero(); t.ambient_rank()];
            for (tau, c) in group {
                if tau.contains(&p) {
                    for (r, x) in residual.iter_mut().zip(c) {
                        *r += x;
                    }
                }
            }
            if !lattice.contains(&residual) {
                return Balance::Unbalanced {
                    face: piece,
                    residual,
                };
            }
        }
    }
    Balance::Balanced
}

impl TropicalCycle {
    pub fn is_balanced(&self) -> bool {
        is_balanced(self).is_balanced()
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::refine::span_cells;
use super::Cone;
use crate::error::{Error, Result};

/// A pure-dimensional weighted fan with positive integer multiplicities.
///
/// Cones are kept sorted and duplicates are combined, so equal inputs give
/// equal values. Equality as cycles (same weight at every regular point) is
/// [`TropicalCycle::equivalent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCycle {
    ambient_rank: usize,
    dim: usize,
    cones: Vec<(Cone, BigInt)>,
}

impl TropicalCycle {
    pub fn new(ambient_rank: usize, dim: usize, cones: Vec<(Cone, BigInt)>) -> Result<Self> {
        let mut merged: BTreeMap<Cone, BigInt> = BTreeMap::new();
        for (c, m) in cones {
            if c.ambient_rank() != ambient_rank {
                return Err(Error::DimensionMismatch(format!(
                    "cone in Q^{} in a cycle in Q^{}",
                    c.ambient_rank(),
                    ambient_rank
                )));
            }
            if c.dim() != dim {
                return Err(Error::NotPure {
                    expected: dim,
                    found: c.dim(),
                });
            }
            if !m.is_positive() {
                return Err(Error::NonPositiveMultiplicity);
            }
            *merged.entry(c).or_insert_with(BigInt::zero) += m;
        }
        Ok(TropicalCycle {
            ambient_rank,
            dim,
            cones: merged.into_iter().collect(),
        })
    }

    pub fn empty(ambient_rank: usize, dim: usize) -> Self {
        TropicalCycle {
            ambient_rank,
            dim,
            cones: Vec::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cones(&self) -> &[(Cone, BigInt)] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn support_contains(&self, w: &[BigRational]) -> bool {
        self.cones.iter().any(|(c, _)| c.contains(w))
    }

    /// Sum of the weights of the cones containing `w`; the multiplicity of
    /// the cycle when `w` is a regular point.
    pub fn multiplicity_at(&self, w: &[BigRational]) -> BigInt {
        self.cones
            .iter()
            .filter(|(c, _)| c.contains(w))
            .map(|(_, m)| m.clone())
            .sum()
    }

    /// The multiplicity at `w` if `w` is a regular point of this cone
    /// structure: every cone containing it contains it in its relative
    /// interior and all of them span the same space. `None` for non-regular
    /// points and for points off the support.
    pub fn regular_multiplicity(&self, w: &[BigRational]) -> Option<BigInt> {
        let containing: Vec<&(Cone, BigInt)> = self.cones.iter().filter(|(c, _)| c.contains(w)).collect();
        let (first, _) = containing.first()?;
        let regular = containing
            .iter()
            .all(|(c, _)| c.relint_contains(w) && c.span_lattice() == first.span_lattice());
        regular.then(|| containing.iter().map(|(_, m)| m.clone()).sum())
    }

    /// Weights of `cones` summed over the cells of their refinement; cells of
    /// zero weight are dropped. Weights may be any integers.
    pub(crate) fn cell_weights(cones: &[(Cone, BigInt)]) -> Vec<(Cone, BigInt)> {
        let refs: Vec<&Cone> = cones.iter().map(|(c, _)| c).collect();
        span_cells(&refs)
            .into_iter()
            .filter_map(|cell| {
                let p = cell.relint_point(None);
                let m: BigInt = cones
                    .iter()
                    .filter(|(c, _)| c.span_lattice() == cell.span_lattice() && c.contains(&p))
                    .map(|(_, m)| m.clone())
                    .sum();
                (!m.is_zero()).then_some((cell, m))
            })
            .collect()
    }

    /// The same cycle on the common refinement of cones with equal span.
    pub fn refined(&self) -> TropicalCycle {
        TropicalCycle {
            ambient_rank: self.ambient_rank,
            dim: self.dim,
            cones: {
                let mut v = Self::cell_weights(&self.cones);
                v.sort();
                v
            },
        }
    }

    /// Equality of weights at every regular point.
    pub fn equivalent(&self, other: &TropicalCycle) -> bool {
        if self.ambient_rank != other.ambient_rank || self.dim != other.dim {
            return self.is_empty() && other.is_empty();
        }
        let mut signed = self.cones.clone();
        signed.extend(other.cones.iter().map(|(c, m)| (c.clone(), -m)));
        Self::cell_weights(&signed).is_empty()
    }

    /// Joins adjacent cones of equal span and weight whose union is a
    /// convex cone with no larger lineality space.
    pub fn merged(&self) -> TropicalCycle {
        let mut cones = self.cones.clone();
        'outer: loop {
            for i in 0..cones.len() {
                for j in i + 1..cones.len() {
                    if let Some(u) = try_merge(&cones[i], &cones[j]) {
                        cones.remove(j);
                        cones.remove(i);
                        cones.push(u);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        cones.sort();
        TropicalCycle {
            ambient_rank: self.ambient_rank,
            dim: self.dim,
            cones,
        }
    }
}

fn try_merge(a: &(Cone, BigInt), b: &(Cone, BigInt)) -> Option<(Cone, BigInt)> {
    let ((ca, ma), (cb, mb)) = (a, b);
    if ma != mb || ca.span_lattice() != cb.span_lattice() {
        return None;
    }
    let neg: Vec<_> = cb
        .facet_normals()
        .iter()
        .map(|f| crate::exact::neg_vec(f))
        .collect();
    let wall = ca.facet_normals().iter().find(|f| neg.contains(f))?;
    let mut gens = ca.generators();
    gens.extend(cb.generators());
    let hull = Cone::new(ca.ambient_rank(), &gens, &[]).ok()?;
    if hull.lineality().rank() > ca.lineality().rank().max(cb.lineality().rank()) {
        return None;
    }
    if hull.cut(wall) != *ca || hull.cut(&crate::exact::neg_vec(wall)) != *cb {
        return None;
    }
    Some((hull, ma.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_vec, IntVec};

    fn cone(n: usize, rays: &[&[i64]]) -> Cone {
        let rs: Vec<IntVec> = rays.iter().map(|r| int_vec(r)).collect();
        Cone::new(n, &rs, &[]).unwrap()
    }

    #[test]
    fn regular_points() {
        // two crossing lines in the plane, weights 1 and 2
        let t = TropicalCycle::new(
            2,
            1,
            vec![
                (Cone::new(2, &[], &[int_vec(&[1, 0])]).unwrap(), BigInt::from(1)),
                (Cone::new(2, &[], &[int_vec(&[0, 1])]).unwrap(), BigInt::from(2)),
            ],
        )
        .unwrap();
        assert_eq!(t.regular_multiplicity(&crate::exact::rat_vec(&[3, 0])), Some(BigInt::from(1)));
        assert_eq!(t.regular_multiplicity(&crate::exact::rat_vec(&[0, -1])), Some(BigInt::from(2)));
        assert_eq!(t.regular_multiplicity(&crate::exact::rat_vec(&[0, 0])), None);
        assert_eq!(t.regular_multiplicity(&crate::exact::rat_vec(&[1, 1])), None);
        assert_eq!(t.multiplicity_at(&crate::exact::rat_vec(&[0, 0])), BigInt::from(3));
    }

    #[test]
    fn construction_checks() {
        let r = cone(2, &[&[1, 0]]);
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            TropicalCycle::new(2, 1, vec![(r.clone(), BigInt::from(1)), (q, BigInt::from(1))]),
            Err(Error::NotPure { expected: 1, found: 2 })
        );
        assert_eq!(
            TropicalCycle::new(2, 1, vec![(r.clone(), BigInt::from(0))]),
            Err(Error::NonPositiveMultiplicity)
        );
        let t = TropicalCycle::new(2, 1, vec![(r.clone(), BigInt::from(1)), (r, BigInt::from(2))])
            .unwrap();
        assert_eq!(t.cones().len(), 1);
        assert_eq!(t.cones()[0].1, BigInt::from(3));
    }

    #[test]
    fn equivalence_after_refinement() {
        let whole = TropicalCycle::new(2, 2, vec![(Cone::whole_space(2), BigInt::from(1))]).unwrap();
        let quads = TropicalCycle::new(
            2,
            2,
            vec![
                (cone(2, &[&[1, 0], &[0, 1]]), BigInt::from(1)),
                (cone(2, &[&[0, 1], &[-1, 0]]), BigInt::from(1)),
                (cone(2, &[&[-1, 0], &[0, -1]]), BigInt::from(1)),
                (cone(2, &[&[0, -1], &[1, 0]]), BigInt::from(1)),
            ],
        )
        .unwrap();
        assert!(whole.equivalent(&quads));
        assert!(quads.equivalent(&whole));
        let three = TropicalCycle::new(2, 2, quads.cones()[..3].to_vec()).unwrap();
        assert!(!three.equivalent(&whole));
    }

    #[test]
    fn merging_keeps_opposite_rays_apart() {
        let t = TropicalCycle::new(
            2,
            1,
            vec![
                (cone(2, &[&[1, 1]]), BigInt::from(2)),
                (cone(2, &[&[-1, -1]]), BigInt::from(2)),
            ],
        )
        .unwrap();
        assert_eq!(t.merged(), t);

        let halves = TropicalCycle::new(
            2,
            2,
            vec![
                (cone(2, &[&[1, 0], &[0, 1]]), BigInt::from(1)),
                (cone(2, &[&[0, 1], &[-1, 1]]), BigInt::from(1)),
            ],
        )
        .unwrap();
        let m = halves.merged();
        assert_eq!(m.cones().len(), 1);
        assert_eq!(m.cones()[0].0, cone(2, &[&[1, 0], &[-1, 1]]));
        assert!(m.equivalent(&halves));
    }
}

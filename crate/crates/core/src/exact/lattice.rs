use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{determinant, hnf_rows, integer_kernel_rows};
use super::{clear_denominators, is_zero_vec, IntMatrix, IntVec, RatVec};
use crate::error::{Error, Result};

/// A subgroup of `Z^n` with its basis stored in Hermite normal form, so two
/// sublattices are equal exactly when their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// The lattice generated by `gens` (which may be dependent).
    pub fn from_generators(ambient_rank: usize, gens: &[IntVec]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in Z^{}",
                g.len(),
                ambient_rank
            )));
        }
        let (h, _) = hnf_rows(gens.to_vec(), ambient_rank);
        let rows: Vec<IntVec> = h.into_iter().filter(|r| !is_zero_vec(r)).collect();
        Ok(Sublattice {
            ambient_rank,
            basis: IntMatrix::from_rows(ambient_rank, &rows)?,
        })
    }

    pub fn full(n: usize) -> Self {
        Sublattice {
            ambient_rank: n,
            basis: IntMatrix::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Sublattice {
            ambient_rank: n,
            basis: IntMatrix::zeros(0, n),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<IntVec> {
        self.basis.row_vecs()
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` lies in the
    /// lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVec> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are non-zero");
            if !(&rem[p] % &row[p]).is_zero() {
                return None;
            }
            let x = &rem[p] / &row[p];
            if !x.is_zero() {
                for (r, b) in rem.iter_mut().zip(row) {
                    *r -= &x * b;
                }
            }
            coords.push(x);
        }
        is_zero_vec(&rem).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.ambient_rank == self.ambient_rank
            && (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Whether the rational vector `v` lies in the linear span.
    pub fn spans(&self, v: &[BigRational]) -> bool {
        self.saturate().contains(&clear_denominators(v))
    }

    /// Rational coordinates of `v` in the Hermite basis, if `v` lies in the
    /// span.
    pub fn rational_coordinates(&self, v: &[BigRational]) -> Option<RatVec> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are non-zero");
            let x = &rem[p] / BigRational::from_integer(row[p].clone());
            if !x.is_zero() {
                for (r, b) in rem.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *r -= &x * BigRational::from_integer(b.clone());
                    }
                }
            }
            coords.push(x);
        }
        rem.iter().all(Zero::is_zero).then_some(coords)
    }

    /// `{x in Z^n : <b, x> = 0 for every basis vector b}`.
    pub fn orthogonal(&self) -> Sublattice {
        let k = integer_kernel_rows(&self.basis_rows(), self.ambient_rank);
        Sublattice::from_generators(self.ambient_rank, &k).expect("kernel has ambient length")
    }

    /// The intersection of the rational span with `Z^n`.
    pub fn saturate(&self) -> Sublattice {
        if self.rank() == self.ambient_rank {
            return Sublattice::full(self.ambient_rank);
        }
        self.orthogonal().orthogonal()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    /// Image under the linear map `a` (rows = target coordinates).
    pub fn image(&self, a: &IntMatrix) -> Result<Sublattice> {
        let gens = (0..self.rank())
            .map(|i| a.apply(self.basis.row(i)))
            .collect::<Result<Vec<_>>>()?;
        Sublattice::from_generators(a.rows(), &gens)
    }

    /// Lattice generated by `self` together with `other`.
    pub fn join(&self, other: &Sublattice) -> Result<Sublattice> {
        let mut gens = self.basis_rows();
        gens.extend(other.basis_rows());
        Sublattice::from_generators(self.ambient_rank, &gens)
    }
}

/// The index `[sup : sub]` of a finite-index sublattice.
pub fn lattice_index(sub: &Sublattice, sup: &Sublattice) -> Result<BigInt> {
    if sub.ambient_rank != sup.ambient_rank {
        return Err(Error::DimensionMismatch(format!(
            "lattices in Z^{} and Z^{}",
            sub.ambient_rank, sup.ambient_rank
        )));
    }
    if sub.rank() != sup.rank() {
        return Err(Error::RankMismatch {
            sub: sub.rank(),
            sup: sup.rank(),
        });
    }
    let coords = (0..sub.rank())
        .map(|i| sup.coordinates(sub.basis.row(i)).ok_or(Error::NotContained))
        .collect::<Result<Vec<_>>>()?;
    Ok(determinant(coords).abs())
}

pub fn saturate(sub: &Sublattice) -> Sublattice {
    sub.saturate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vec;
    use proptest::prelude::*;

    fn lat(n: usize, rows: &[&[i64]]) -> Sublattice {
        let gens: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
        Sublattice::from_generators(n, &gens).unwrap()
    }

    #[test]
    fn index_examples() {
        let z2 = Sublattice::full(2);
        assert_eq!(lattice_index(&z2, &z2).unwrap(), BigInt::from(1));
        let sub = lat(2, &[&[2, 1], &[0, 3]]);
        assert_eq!(lattice_index(&sub, &z2).unwrap(), BigInt::from(6));
        assert_eq!(
            lattice_index(&lat(1, &[&[2]]), &Sublattice::full(1)).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn index_errors() {
        let z2 = Sublattice::full(2);
        assert_eq!(
            lattice_index(&lat(2, &[&[1, 0]]), &z2),
            Err(Error::RankMismatch { sub: 1, sup: 2 })
        );
        assert_eq!(
            lattice_index(&lat(2, &[&[1, 0]]), &lat(2, &[&[2, 0]])),
            Err(Error::NotContained)
        );
        assert_eq!(
            lattice_index(&lat(2, &[&[1, 1]]), &lat(2, &[&[1, 0]])),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&lat(2, &[&[2, 0]])), lat(2, &[&[1, 0]]));
        assert_eq!(saturate(&lat(2, &[&[2, 1], &[0, 3]])), Sublattice::full(2));
        assert_eq!(saturate(&Sublattice::full(2)), Sublattice::full(2));
        assert_eq!(saturate(&Sublattice::zero(3)), Sublattice::zero(3));
        assert_eq!(saturate(&lat(3, &[&[2, 4, 0]])), lat(3, &[&[1, 2, 0]]));
    }

    #[test]
    fn canonical_representation() {
        assert_eq!(lat(2, &[&[2, 4], &[1, 3]]), lat(2, &[&[1, 1], &[0, 2]]));
        assert_eq!(lat(2, &[&[1, 1], &[1, 1]]).rank(), 1);
    }

    fn gen_rows(n: usize) -> impl Strategy<Value = Vec<IntVec>> {
        proptest::collection::vec(
            proptest::collection::vec(-5i64..6, n).prop_map(|v| int_vec(&v)),
            0..4,
        )
    }

    proptest! {
        #[test]
        fn index_is_multiplicative(a in gen_rows(3), b in gen_rows(3)) {
            // sup = Z^3, mid = <a> + <b>, sub = 2*mid when ranks permit
            let mid = Sublattice::from_generators(3, &[a.clone(), b.clone()].concat()).unwrap();
            let sup = mid.saturate();
            let doubled: Vec<IntVec> = mid.basis_rows().iter()
                .map(|r| r.iter().map(|x| x * BigInt::from(2)).collect()).collect();
            let sub = Sublattice::from_generators(3, &doubled).unwrap();
            let i1 = lattice_index(&sub, &mid).unwrap();
            let i2 = lattice_index(&mid, &sup).unwrap();
            let i3 = lattice_index(&sub, &sup).unwrap();
            prop_assert_eq!(&i1 * &i2, i3);
            prop_assert_eq!(i1, BigInt::from(2).pow(mid.rank() as u32));
        }

        #[test]
        fn saturation_is_idempotent_and_divides(a in gen_rows(3)) {
            let l = Sublattice::from_generators(3, &a).unwrap();
            let s = l.saturate();
            prop_assert_eq!(s.saturate(), s.clone());
            prop_assert!(s.contains_lattice(&l));
            prop_assert_eq!(s.rank(), l.rank());
            let i = lattice_index(&l, &s).unwrap();
            prop_assert!(i >= BigInt::from(1));
            // every intermediate lattice has an index dividing the index into s
            if s.rank() > 0 {
                let mid = l.join(&Sublattice::from_generators(3, &[s.basis_rows()[0].clone()]).unwrap()).unwrap();
                let j = lattice_index(&l, &mid).unwrap();
                prop_assert!((&i % &j).is_zero());
            }
        }
    }
}

//! Tropicalization of generic complete intersections and hypersurfaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{content, sub_vec};
use crate::fan::{normal_cone_of, Cone, TropicalCycle};
use crate::polytope::{minkowski_dim, minkowski_sum_all, mixed_volume, LatticePolytope};

/// Newton polytopes `P_1, ..., P_c` of a generic complete intersection in
/// the torus of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersectionInput {
    ambient_rank: usize,
    polytopes: Vec<LatticePolytope>,
}

impl CompleteIntersectionInput {
    pub fn new(ambient_rank: usize, polytopes: Vec<LatticePolytope>) -> Result<Self> {
        if polytopes.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(p) = polytopes.iter().find(|p| p.ambient_rank() != ambient_rank) {
            return Err(Error::DimensionMismatch(format!(
                "polytope in rank {} for a complete intersection in rank {}",
                p.ambient_rank(),
                ambient_rank
            )));
        }
        if polytopes.len() > ambient_rank {
            return Err(Error::InvariantViolation(format!(
                "{} equations in a torus of rank {}",
                polytopes.len(),
                ambient_rank
            )));
        }
        Ok(CompleteIntersectionInput {
            ambient_rank,
            polytopes,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn codim(&self) -> usize {
        self.polytopes.len()
    }

    pub fn polytopes(&self) -> &[LatticePolytope] {
        &self.polytopes
    }
}

/// `dim face_w(P_I) >= |I|` for every non-empty `I`.
fn faces_pass(faces: &[LatticePolytope]) -> bool {
    let c = faces.len();
    (1usize..(1 << c)).all(|mask| {
        let sub: Vec<&LatticePolytope> = (0..c)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &faces[i])
            .collect();
        minkowski_dim(&sub) >= sub.len()
    })
}

pub fn is_in_tropical_ci(w: &[BigRational], input: &CompleteIntersectionInput) -> Result<bool> {
    let faces = input
        .polytopes
        .iter()
        .map(|p| p.face(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(faces_pass(&faces))
}

/// The tropical variety of the complete intersection with its mixed-volume
/// multiplicities, on cones of the normal fan of `P_1 + ... + P_c`.
pub fn tropical_ci(input: &CompleteIntersectionInput) -> Result<TropicalCycle> {
    let n = input.ambient_rank;
    let c = input.codim();
    let sum = minkowski_sum_all(&input.polytopes)?;
    if sum.dim() < n {
        return Err(Error::InvariantViolation(format!(
            "the Minkowski sum has dimension {} < {}",
            sum.dim(),
            n
        )));
    }
    let mut cones: Vec<(Cone, BigInt)> = Vec::new();
    for f in sum.face_data().iter().filter(|f| f.dim == c) {
        let gamma = normal_cone_of(&sum, f);
        let w = gamma.relint_point(None);
        let faces = input
            .polytopes
            .iter()
            .map(|p| p.face(&w))
            .collect::<Result<Vec<_>>>()?;
        if !faces_pass(&faces) {
            continue;
        }
        let lattice = gamma.span_lattice().orthogonal();
        let m = mixed_volume(&faces, &lattice)?;
        if m.is_positive() {
            cones.push((gamma, m));
        }
    }
    if cones.is_empty() {
        return Err(Error::EmptyVariety);
    }
    TropicalCycle::new(n, n - c, cones)
}

/// The codimension-one cones of the normal fan of `q`, weighted by the
/// lattice lengths of the dual edges.
pub fn tropical_hypersurface(q: &LatticePolytope) -> Result<TropicalCycle> {
    if q.is_point() {
        return Err(Error::ZeroDimensional);
    }
    let n = q.ambient_rank();
    let cones = q
        .face_data()
        .iter()
        .filter(|f| f.dim == 1)
        .map(|f| {
            let ends: Vec<usize> = f.vertices.ones().collect();
            let edge = sub_vec(&q.vertices()[ends[1]], &q.vertices()[ends[0]]);
            (normal_cone_of(q, f), content(&edge))
        })
        .collect();
    TropicalCycle::new(n, n - 1, cones)
}

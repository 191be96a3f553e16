//! Rational polyhedral cones, fans and weighted fans.

mod balance;
mod cone;
mod cycle;
pub(crate) mod refine;


use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polytope::{FaceData, LatticePolytope};

pub use balance::{is_balanced, Balance};
pub use cone::{relint_point, span_lattice, Cone};
pub use cycle::TropicalCycle;

/// A fan given by its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    ambient_rank: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// Keeps the inclusion-maximal cones of `cones`.
    pub fn new(ambient_rank: usize, cones: Vec<Cone>) -> Result<Fan> {
        if let Some(c) = cones.iter().find(|c| c.ambient_rank() != ambient_rank) {
            return Err(Error::DimensionMismatch(format!(
                "cone in Q^{} in a fan in Q^{}",
                c.ambient_rank(),
                ambient_rank
            )));
        }
        let unique: BTreeSet<Cone> = cones.into_iter().collect();
        let all: Vec<Cone> = unique.into_iter().collect();
        let cones = all
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !all.iter()
                    .enumerate()
                    .any(|(j, d)| j != *i && d.dim() >= c.dim() && d.contains_cone(c))
            })
            .map(|(_, c)| c.clone())
            .collect();
        Ok(Fan {
            ambient_rank,
            cones,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Every cone of the fan, faces included.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack: Vec<Cone> = self.cones.clone();
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            for (_, f) in c.facets() {
                stack.push(f);
            }
            seen.insert(c);
        }
        seen.into_iter().collect()
    }

    /// Whether all pairwise intersections of maximal cones are faces of both.
    pub fn is_fan(&self) -> bool {
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let Ok(c) = a.intersect(b) else { return false };
                if !c.is_face_of(a) || !c.is_face_of(b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn support_contains(&self, x: &[num_rational::BigRational]) -> bool {
        self.cones.iter().any(|c| c.contains(x))
    }
}

/// The cone `{w : face_w(P) ⊇ F}` of a face given by its facet incidences.
pub(crate) fn normal_cone_of(p: &LatticePolytope, face: &FaceData) -> Cone {
    let hull = p.hull_data();
    let rays: Vec<_> = face.facets.ones().map(|j| hull.facets[j].0.clone()).collect();
    let lin: Vec<_> = hull.equations.iter().map(|(a, _)| a.clone()).collect();
    Cone::new(p.ambient_rank(), &rays, &lin).expect("normals have ambient length")
}

/// Normal cones of all non-empty faces of `p`, paired with the faces.
pub fn normal_cones(p: &LatticePolytope) -> Vec<(LatticePolytope, Cone)> {
    p.face_data()
        .iter()
        .map(|f| (p.sub_polytope(&f.vertices), normal_cone_of(p, f)))
        .collect()
}

/// The inner normal fan, given by the normal cones of the vertices.
pub fn normal_fan(p: &LatticePolytope) -> Fan {
    let cones = p
        .face_data()
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| normal_cone_of(p, f))
        .collect();
    Fan::new(p.ambient_rank(), cones).expect("normal cones have ambient length")
}

/// The fan of all intersections of one cone from each input fan.
pub fn common_refinement(fans: &[Fan]) -> Result<Fan> {
    let (first, rest) = fans.split_first().ok_or(Error::EmptyInput)?;
    let mut acc = first.clone();
    for f in rest {
        if f.ambient_rank != acc.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "fans in Q^{} and Q^{}",
                acc.ambient_rank, f.ambient_rank
            )));
        }
        let mut cones = Vec::new();
        for a in &acc.cones {
            for b in &f.cones {
                cones.push(a.intersect(b)?);
            }
        }
        acc = Fan::new(acc.ambient_rank, cones)?;
    }
    Ok(acc)
}

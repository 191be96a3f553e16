//! Tropical implicitization of a parametrization given by Newton polytopes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::eliminate::{pushforward_seeded, MonomialMap};
use crate::error::{Error, Result};
use crate::exact::{lattice_index, rank, IntMatrix, IntVec, RatVec, Sublattice};
use crate::fan::{normal_cone_of, Cone, TropicalCycle};
use crate::polytope::{minkowski_dim, minkowski_sum_all, mixed_volume, LatticePolytope};
use crate::tropical::{tropical_ci, CompleteIntersectionInput};

/// Newton polytopes `P_1, ..., P_s ⊂ Q^r` of a map from a torus of rank `r`
/// to a torus of rank `s`, with the degree `δ` of the map onto its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizationInput {
    source_rank: usize,
    polytopes: Vec<LatticePolytope>,
    degree: BigInt,
}

impl ParametrizationInput {
    pub fn new(source_rank: usize, polytopes: Vec<LatticePolytope>, degree: BigInt) -> Result<Self> {
        if polytopes.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(p) = polytopes.iter().find(|p| p.ambient_rank() != source_rank) {
            return Err(Error::DimensionMismatch(format!(
                "polytope in rank {} for a parametrization from rank {}",
                p.ambient_rank(),
                source_rank
            )));
        }
        if !degree.is_positive() {
            return Err(Error::InvalidDegree);
        }
        Ok(ParametrizationInput {
            source_rank,
            polytopes,
            degree,
        })
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.polytopes.len()
    }

    pub fn polytopes(&self) -> &[LatticePolytope] {
        &self.polytopes
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }
}

/// The vector of support functions `(min <w, P_1>, ..., min <w, P_s>)`.
pub fn psi(w: &[BigRational], input: &ParametrizationInput) -> Result<RatVec> {
    input.polytopes.iter().map(|p| p.support_value(w)).collect()
}

/// The linear map extending `Ψ` from a cone: row `i` is a vertex of
/// `face_C(P_i)`.
struct LinearPiece {
    rows: Vec<IntVec>,
    faces: Vec<LatticePolytope>,
}

impl LinearPiece {
    fn at(w: &[BigRational], input: &ParametrizationInput) -> Result<Self> {
        let faces = input
            .polytopes
            .iter()
            .map(|p| p.face(w))
            .collect::<Result<Vec<_>>>()?;
        let rows = faces.iter().map(|f| f.vertices()[0].clone()).collect();
        Ok(LinearPiece { rows, faces })
    }

    fn of_cone(c: &Cone, input: &ParametrizationInput) -> Result<Self> {
        if c.ambient_rank() != input.source_rank {
            return Err(Error::DimensionMismatch(format!(
                "cone in Q^{} for a parametrization from rank {}",
                c.ambient_rank(),
                input.source_rank
            )));
        }
        let piece = Self::at(&c.relint_point(None), input)?;
        let other = Self::at(&c.relint_point(Some(0)), input)?;
        if piece.faces != other.faces {
            return Err(Error::NotNormalFanCone);
        }
        Ok(piece)
    }

    fn apply(&self, v: &[BigInt]) -> IntVec {
        self.rows.iter().map(|r| crate::exact::dot(r, v)).collect()
    }

    /// `Ψ_C(span_lattice(C)) + Z^J`.
    fn lattice(&self, c: &Cone, j: &[usize]) -> Sublattice {
        let s = self.rows.len();
        let mut gens: Vec<IntVec> = c
            .span_lattice()
            .basis_rows()
            .iter()
            .map(|b| self.apply(b))
            .collect();
        for &i in j {
            let mut e = vec![BigInt::zero(); s];
            e[i] = BigInt::one();
            gens.push(e);
        }
        Sublattice::from_generators(s, &gens).expect("lengths agree")
    }

    fn index(&self, c: &Cone, j: &[usize], r: usize) -> BigInt {
        let l = self.lattice(c, j);
        if l.rank() < r {
            return BigInt::zero();
        }
        lattice_index(&l, &l.saturate()).expect("a lattice has finite index in its saturation")
    }

    /// The cone `Ψ_C(C) + R_{>=0}^J`.
    fn generated_cone(&self, c: &Cone, j: &[usize]) -> Cone {
        let s = self.rows.len();
        let mut rays: Vec<IntVec> = c.rays().iter().map(|r| self.apply(r)).collect();
        for &i in j {
            let mut e = vec![BigInt::zero(); s];
            e[i] = BigInt::one();
            rays.push(e);
        }
        let lin: Vec<IntVec> = c
            .lineality()
            .basis_rows()
            .iter()
            .map(|l| self.apply(l))
            .collect();
        Cone::new(s, &rays, &lin).expect("lengths agree")
    }
}

fn check_subset(j: &[usize], s: usize) -> Result<()> {
    match j.iter().find(|&&i| i >= s) {
        Some(i) => Err(Error::DimensionMismatch(format!(
            "index {} in a subset of {} coordinates",
            i + 1,
            s
        ))),
        None => Ok(()),
    }
}

/// `[sat(L) : L]` for `L = Ψ_C(span_lattice(C)) + Z^J`, or 0 when `L` has
/// rank below `r`. Indices in `j` are zero-based.
pub fn index_cj(c: &Cone, j: &[usize], input: &ParametrizationInput) -> Result<BigInt> {
    check_subset(j, input.target_rank())?;
    let piece = LinearPiece::of_cone(c, input)?;
    Ok(piece.index(c, j, input.source_rank))
}

/// `dim(Σ_{i∈K} F_i) >= |K|` for all non-empty `K ⊆ J`.
fn positive(faces: &[LatticePolytope], j: &[usize]) -> bool {
    (1usize..(1 << j.len())).all(|mask| {
        let sub: Vec<&LatticePolytope> = j
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &i)| &faces[i])
            .collect();
        minkowski_dim(&sub) >= sub.len()
    })
}

fn subsets_of_size(s: usize, k: usize) -> Vec<Vec<usize>> {
    (0usize..(1 << s))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..s).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Weighted cones `(Ψ_C(C) + R^J, index(C,J) · MV)` over all admissible
/// pairs, before dividing by the degree.
fn weighted_pairs(input: &ParametrizationInput) -> Result<Vec<(Cone, BigInt)>> {
    let r = input.source_rank;
    let s = input.target_rank();
    let sum = minkowski_sum_all(&input.polytopes)?;
    if sum.dim() < r {
        return Err(Error::DegenerateParametrization(format!(
            "the Newton polytopes span only {} of {} dimensions",
            sum.dim(),
            r
        )));
    }
    let mut out = Vec::new();
    for f in sum.face_data() {
        let c = normal_cone_of(&sum, f);
        let piece = LinearPiece::at(&c.relint_point(None), input)?;
        let size = r - c.dim();
        if size > s {
            continue;
        }
        for j in subsets_of_size(s, size) {
            if !positive(&piece.faces, &j) {
                continue;
            }
            let index = piece.index(&c, &j, r);
            if index.is_zero() {
                continue;
            }
            let mv = if j.is_empty() {
                BigInt::one()
            } else {
                let chosen: Vec<LatticePolytope> =
                    j.iter().map(|&i| piece.faces[i].clone()).collect();
                mixed_volume(&chosen, &difference_lattice(&chosen, r))?
            };
            if mv.is_zero() {
                continue;
            }
            out.push((piece.generated_cone(&c, &j), index * mv));
        }
    }
    Ok(out)
}

/// Saturation of the lattice spanned by edge directions of the polytopes.
fn difference_lattice(polytopes: &[LatticePolytope], r: usize) -> Sublattice {
    let dirs: Vec<IntVec> = polytopes
        .iter()
        .flat_map(|p| {
            let base = p.vertices()[0].clone();
            p.vertices()[1..]
                .iter()
                .map(move |v| crate::exact::sub_vec(v, &base))
                .collect::<Vec<_>>()
        })
        .collect();
    debug_assert!(rank(&dirs) <= r);
    Sublattice::from_generators(r, &dirs)
        .expect("lengths agree")
        .saturate()
}

/// The tropical variety of the closure of the image, assembled pair by pair.
pub fn tropical_implicitization(input: &ParametrizationInput) -> Result<TropicalCycle> {
    let r = input.source_rank;
    let s = input.target_rank();
    let pairs = weighted_pairs(input)?;
    if pairs.is_empty() {
        return Err(Error::DegenerateParametrization(
            "no pair contributes a cone of full dimension".into(),
        ));
    }
    let mut cones = Vec::new();
    for (cell, total) in TropicalCycle::cell_weights(&pairs) {
        let (q, rem) = total.div_rem(&input.degree);
        if !rem.is_zero() {
            return Err(Error::NonIntegralMultiplicity {
                numerator: total.to_string(),
                degree: input.degree.to_string(),
            });
        }
        cones.push((cell, q));
    }
    Ok(TropicalCycle::new(s, r, cones)?.merged())
}

/// The polytopes `conv(P_i × 0 ∪ {(0, e_i)}) ⊂ Q^{r+s}` of the graph.
pub fn graph_polytopes(input: &ParametrizationInput) -> Result<Vec<LatticePolytope>> {
    let r = input.source_rank;
    let s = input.target_rank();
    input
        .polytopes
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut pts: Vec<IntVec> = p
                .vertices()
                .iter()
                .map(|v| {
                    let mut x = v.clone();
                    x.resize(r + s, BigInt::zero());
                    x
                })
                .collect();
            let mut e = vec![BigInt::zero(); r + s];
            e[r + i] = BigInt::one();
            pts.push(e);
            LatticePolytope::new(r + s, &pts)
        })
        .collect()
}

pub fn graph_implicitization(input: &ParametrizationInput) -> Result<TropicalCycle> {
    graph_implicitization_seeded(input, 0)
}

/// Tropicalize the graph as a complete intersection and project it to the
/// target torus.
pub fn graph_implicitization_seeded(input: &ParametrizationInput, seed: u64) -> Result<TropicalCycle> {
    let r = input.source_rank;
    let s = input.target_rank();
    let graph = CompleteIntersectionInput::new(r + s, graph_polytopes(input)?)?;
    let cycle = tropical_ci(&graph)?;
    let projection: Vec<IntVec> = (0..s)
        .map(|i| {
            let mut row = vec![BigInt::zero(); r + s];
            row[r + i] = BigInt::one();
            row
        })
        .collect();
    let map = MonomialMap::new(
        IntMatrix::from_rows(r + s, &projection)?,
        input.degree.clone(),
    )?;
    pushforward_seeded(&cycle, &map, seed)
}

//! Newton polytopes from codimension-one tropical cycles, and mixed fiber
//! polytopes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eliminate::{pushforward_seeded, MonomialMap, MAX_ATTEMPTS};
use crate::error::{Error, Result};
use crate::exact::{dot_int_rat, lattice_index, sign_normalized, IntVec, RatVec, Sublattice};
use crate::fan::{refine::split_by, Cone, TropicalCycle};
use crate::polytope::{LatticePolytope, RationalPolytope};
use crate::tropical::{tropical_ci, CompleteIntersectionInput};

enum Shot {
    Vertex(IntVec),
    Degenerate,
}

fn check_codim_one(t: &TropicalCycle) -> Result<()> {
    let d = t.ambient_rank();
    if d == 0 || t.dim() + 1 != d {
        return Err(Error::NotPure {
            expected: d.saturating_sub(1),
            found: t.dim(),
        });
    }
    Ok(())
}

/// The hyperplane spanned by a codimension-one cone.
fn equation(c: &Cone) -> &IntVec {
    &c.equations()[0]
}

/// Shoot the halflines `u + t e_i`, or report that one of them meets the
/// support in a non-generic way.
fn shoot(t: &TropicalCycle, u: &[BigRational]) -> Result<Shot> {
    let d = t.ambient_rank();
    let mut vertex = vec![BigInt::zero(); d];
    for (i, coord) in vertex.iter_mut().enumerate() {
        for (sigma, m) in t.cones() {
            let e = equation(sigma);
            let at_u = dot_int_rat(e, u);
            if e[i].is_zero() {
                if at_u.is_zero() {
                    return Ok(Shot::Degenerate);
                }
                continue;
            }
            // e . (u + s e_i) = 0
            let s = -&at_u / BigRational::from_integer(e[i].clone());
            if s.is_negative() {
                continue;
            }
            let mut p = u.to_vec();
            p[i] += &s;
            if sigma.relint_contains(&p) {
                let mut unit = vec![BigInt::zero(); d];
                unit[i] = BigInt::one();
                let lattice = sigma
                    .span_lattice()
                    .join(&Sublattice::from_generators(d, &[unit])?)?;
                *coord += lattice_index(&lattice, &Sublattice::full(d))? * m;
            } else if sigma.contains(&p) {
                return Ok(Shot::Degenerate);
            }
        }
    }
    Ok(Shot::Vertex(vertex))
}

/// A nearby point reached without crossing the support: no hyperplane of the
/// cycle changes sign strictly between `u` and the result.
fn perturb(t: &TropicalCycle, u: &[BigRational], seed: u64) -> Option<RatVec> {
    const DEN: i64 = 1009;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir: RatVec = u
        .iter()
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-DEN..=DEN)), BigInt::from(DEN)))
        .collect();
    let mut eps = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..64 {
        let v: RatVec = u.iter().zip(&dir).map(|(a, b)| a + &eps * b).collect();
        let ok = t.cones().iter().all(|(c, _)| {
            let e = equation(c);
            let (a, b) = (dot_int_rat(e, u), dot_int_rat(e, &v));
            if a.is_zero() {
                !b.is_zero()
            } else {
                a.signum() == b.signum()
            }
        });
        if ok {
            return Some(v);
        }
        eps /= &two;
    }
    None
}

/// The vertex `face_u(Q)` of the polytope `Q` dual to the codimension-one
/// cycle, normalized so that the coordinatewise minimum of `Q` is the origin.
pub fn vertex_by_ray_shooting(t: &TropicalCycle, u: &[BigRational]) -> Result<IntVec> {
    vertex_by_ray_shooting_seeded(t, u, 0)
}

pub fn vertex_by_ray_shooting_seeded(
    t: &TropicalCycle,
    u: &[BigRational],
    seed: u64,
) -> Result<IntVec> {
    check_codim_one(t)?;
    if u.len() != t.ambient_rank() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} in Q^{}",
            u.len(),
            t.ambient_rank()
        )));
    }
    if t.support_contains(u) {
        return Err(Error::OnSupport);
    }
    if let Shot::Vertex(v) = shoot(t, u)? {
        return Ok(v);
    }
    for s in seed..seed + MAX_ATTEMPTS {
        let Some(v) = perturb(t, u, s) else { continue };
        if let Shot::Vertex(x) = shoot(t, &v)? {
            return Ok(x);
        }
    }
    Err(Error::GenericityFailure {
        attempts: MAX_ATTEMPTS as usize,
    })
}

pub fn reconstruct_polytope(t: &TropicalCycle) -> Result<LatticePolytope> {
    reconstruct_polytope_seeded(t, 0)
}

/// The lattice polytope whose tropical hypersurface is `t`, translated so
/// that its coordinatewise minimum is the origin.
///
/// One vertex is found per chamber of the arrangement of hyperplanes spanned
/// by the cones of `t`.
pub fn reconstruct_polytope_seeded(t: &TropicalCycle, seed: u64) -> Result<LatticePolytope> {
    check_codim_one(t)?;
    let d = t.ambient_rank();
    if !t.is_balanced() {
        return Err(Error::NotBalanced);
    }
    let hyperplanes: Vec<IntVec> = t
        .cones()
        .iter()
        .filter_map(|(c, _)| sign_normalized(equation(c)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let chambers = split_by(&Cone::whole_space(d), &hyperplanes);
    let mut vertices = BTreeSet::new();
    for chamber in chambers {
        let u = chamber.relint_point(Some(seed));
        vertices.insert(vertex_by_ray_shooting_seeded(t, &u, seed)?);
    }
    let vertices: Vec<IntVec> = vertices.into_iter().collect();
    Ok(LatticePolytope::new(d, &vertices)?.normalized_to_origin())
}

/// `δ` times the Newton polytope of the hypersurface obtained by projecting
/// the generic complete intersection with Newton polytopes `polytopes`.
pub fn mixed_fiber_polytope(
    polytopes: &[LatticePolytope],
    map: &MonomialMap,
) -> Result<LatticePolytope> {
    mixed_fiber_polytope_seeded(polytopes, map, 0)
}

pub fn mixed_fiber_polytope_seeded(
    polytopes: &[LatticePolytope],
    map: &MonomialMap,
    seed: u64,
) -> Result<LatticePolytope> {
    let n = polytopes.first().ok_or(Error::EmptyInput)?.ambient_rank();
    let c = polytopes.len();
    let d = map.target_rank();
    if map.source_rank() != n || d + c != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "a {}x{} map for {} polytopes in rank {} (need d = n - c + 1)",
            d,
            map.source_rank(),
            c,
            n
        )));
    }
    let input = CompleteIntersectionInput::new(n, polytopes.to_vec())?;
    let cycle = tropical_ci(&input)?;
    let image = pushforward_seeded(&cycle, map, seed)?;
    let q = reconstruct_polytope_seeded(&image, seed)?;
    Ok(q.scale(map.degree()))
}

/// `1/c!` times the mixed fiber polytope of `c` copies of `p`.
pub fn fiber_polytope(p: &LatticePolytope, map: &MonomialMap, c: usize) -> Result<RationalPolytope> {
    fiber_polytope_seeded(p, map, c, 0)
}

pub fn fiber_polytope_seeded(
    p: &LatticePolytope,
    map: &MonomialMap,
    c: usize,
    seed: u64,
) -> Result<RationalPolytope> {
    if c == 0 {
        return Err(Error::EmptyInput);
    }
    let copies = vec![p.clone(); c];
    let q = mixed_fiber_polytope_seeded(&copies, map, seed)?;
    let factorial: BigInt = (1..=c).map(BigInt::from).product();
    Ok(RationalPolytope::from(&q).scale(&BigRational::new(BigInt::one(), factorial)))
}

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hull::{enumerate_faces, hull_points};
use super::{difference_directions, LatticePolytope};
use crate::error::{Error, Result};
use crate::exact::matrix::determinant;
use crate::exact::{to_rat, IntVec, RatVec, Sublattice};

/// `|det|` of a square rational matrix given by rows.
fn rational_abs_det(rows: &[RatVec]) -> BigRational {
    let mut scale = BigInt::one();
    let ints: Vec<IntVec> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            scale *= &l;
            r.iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    BigRational::new(determinant(ints).abs(), scale)
}

/// Sum of `|det|` over a pulling triangulation of a full-dimensional point
/// configuration in `Q^k`.
fn pulling_volume(points: &[RatVec], k: usize) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let (verts, data) = hull_points(points);
    let faces = enumerate_faces(&verts, &data);
    debug_assert_eq!(faces[0].dim, k);
    // facets of each face: faces one dimension lower contained in it
    let sub_facets: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| {
            faces
                .iter()
                .enumerate()
                .filter(|(_, g)| g.dim + 1 == f.dim && g.vertices.is_subset(&f.vertices))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let simplices = triangulate(0, &faces, &sub_facets, &mut memo);
    let mut total = BigRational::zero();
    for s in simplices {
        let base = &verts[s[0]];
        let rows: Vec<RatVec> = s[1..]
            .iter()
            .map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        total += rational_abs_det(&rows);
    }
    total
}

fn triangulate(
    face: usize,
    faces: &[super::FaceData],
    sub_facets: &[Vec<usize>],
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(s) = memo.get(&face) {
        return s.clone();
    }
    let f = &faces[face];
    let apex = f.vertices.ones().next().expect("faces are non-empty");
    let out = if f.dim == 0 {
        vec![vec![apex]]
    } else {
        let mut out = Vec::new();
        for &g in &sub_facets[face] {
            if faces[g].vertices.contains(apex) {
                continue;
            }
            for mut s in triangulate(g, faces, sub_facets, memo) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    };
    memo.insert(face, out.clone());
    out
}

/// Coordinates of `v_i - v_0` in a basis of `lat`, or `SpanMismatch`.
fn lattice_coordinates(p: &LatticePolytope, lat: &Sublattice) -> Result<Vec<RatVec>> {
    if p.ambient_rank() != lat.ambient_rank() {
        return Err(Error::DimensionMismatch(format!(
            "polytope in rank {} measured in a lattice in Z^{}",
            p.ambient_rank(),
            lat.ambient_rank()
        )));
    }
    let base = &p.vertices()[0];
    p.vertices()
        .iter()
        .map(|v| {
            let d: RatVec = to_rat(&crate::exact::sub_vec(v, base));
            lat.rational_coordinates(&d).ok_or_else(|| {
                Error::SpanMismatch("an edge direction is outside the span of the lattice".into())
            })
        })
        .collect()
}

fn rational_volume(p: &LatticePolytope, lat: &Sublattice) -> Result<BigRational> {
    let coords = lattice_coordinates(p, lat)?;
    if p.dim() != lat.rank() {
        return Err(Error::SpanMismatch(format!(
            "polytope of dimension {} in a lattice of rank {}",
            p.dim(),
            lat.rank()
        )));
    }
    Ok(pulling_volume(&coords, lat.rank()))
}

fn integral(v: BigRational) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonLatticePolytope)
    }
}

/// `dim(P)!` times the Euclidean volume of `P` in coordinates of a basis of
/// `lat`.
pub fn normalized_volume(p: &LatticePolytope, lat: &Sublattice) -> Result<BigInt> {
    integral(rational_volume(p, lat)?)
}

/// Normalized mixed volume of `m` polytopes with respect to a rank-`m`
/// lattice, by inclusion and exclusion over Minkowski sums of subfamilies.
pub fn mixed_volume(polytopes: &[LatticePolytope], lat: &Sublattice) -> Result<BigInt> {
    let m = lat.rank();
    if polytopes.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{} polytopes for a lattice of rank {}",
            polytopes.len(),
            m
        )));
    }
    for p in polytopes {
        if p.ambient_rank() != lat.ambient_rank() {
            return Err(Error::DimensionMismatch(format!(
                "polytope in rank {} measured in a lattice in Z^{}",
                p.ambient_rank(),
                lat.ambient_rank()
            )));
        }
        let dirs = difference_directions(&p.rational_vertices());
        if dirs.iter().any(|d| lat.rational_coordinates(&to_rat(d)).is_none()) {
            return Err(Error::SpanMismatch(
                "an edge direction is outside the span of the lattice".into(),
            ));
        }
    }
    if m == 0 {
        return Ok(BigInt::one());
    }
    let mut sums: Vec<Option<LatticePolytope>> = vec![None; 1 << m];
    // inclusion and exclusion runs over Euclidean volumes; the m! factors
    // cancel against the normalization of the result
    let factorial: BigInt = (1..=m).map(BigInt::from).product();
    let mut total = BigRational::zero();
    for mask in 1usize..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let sum = match &sums[rest] {
            None => polytopes[low].clone(),
            Some(s) => s.minkowski_sum(&polytopes[low])?,
        };
        if sum.dim() == m {
            let v = rational_volume(&sum, lat)?;
            if (m - mask.count_ones() as usize).is_multiple_of(2) {
                total += v;
            } else {
                total -= v;
            }
        }
        sums[mask] = Some(sum);
    }
    integral(total / BigRational::from_integer(factorial))
}

//! Lattice and rational polytopes given by their vertices.
//!
//! Faces and support values use the minimization convention: `face(P, w)` is
//! the set of points of `P` on which `<w, .>` is smallest.

mod hull;
mod volume;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{add_vec, dot_int_rat, dot_rat, to_rat, IntVec, RatVec};

pub(crate) use hull::{difference_directions, enumerate_faces, FaceData, HullData};
pub use volume::{mixed_volume, normalized_volume};

fn check_points<T>(ambient_rank: usize, points: &[Vec<T>]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(p) = points.iter().find(|p| p.len() != ambient_rank) {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} in an ambient space of rank {}",
            p.len(),
            ambient_rank
        )));
    }
    Ok(())
}

fn check_covector(ambient_rank: usize, w: &[BigRational]) -> Result<()> {
    if w.len() != ambient_rank {
        return Err(Error::DimensionMismatch(format!(
            "covector of length {} on an ambient space of rank {}",
            w.len(),
            ambient_rank
        )));
    }
    Ok(())
}

/// Convex hull of finitely many integer points, stored by its vertices.
#[derive(Clone)]
pub struct LatticePolytope {
    ambient_rank: usize,
    vertices: Vec<IntVec>,
    cache: Arc<Cache>,
}

#[derive(Default)]
struct Cache {
    hull: OnceLock<HullData>,
    faces: OnceLock<Vec<FaceData>>,
}

impl LatticePolytope {
    pub fn new(ambient_rank: usize, points: &[IntVec]) -> Result<Self> {
        check_points(ambient_rank, points)?;
        let rat: Vec<RatVec> = points.iter().map(|p| to_rat(p)).collect();
        let (verts, data) = hull::hull_points(&rat);
        let vertices = verts
            .into_iter()
            .map(|v| v.into_iter().map(|x| x.to_integer()).collect())
            .collect();
        let cache = Cache::default();
        let _ = cache.hull.set(data);
        Ok(LatticePolytope {
            ambient_rank,
            vertices,
            cache: Arc::new(cache),
        })
    }

    /// Polytope from integer literals.
    ///
    /// # Panics
    /// On an empty or ragged point list.
    pub fn from_i64(points: &[&[i64]]) -> Self {
        let n = points.first().map_or(0, |p| p.len());
        let pts: Vec<IntVec> = points.iter().map(|p| crate::exact::int_vec(p)).collect();
        Self::new(n, &pts).expect("valid literal polytope")
    }

    pub fn point(p: IntVec) -> Self {
        let n = p.len();
        Self::new(n, &[p]).expect("a single point is a polytope")
    }

    /// Build from points already known to be exactly the vertices.
    pub(crate) fn from_vertices_unchecked(ambient_rank: usize, mut vertices: Vec<IntVec>) -> Self {
        vertices.sort();
        vertices.dedup();
        LatticePolytope {
            ambient_rank,
            vertices,
            cache: Arc::new(Cache::default()),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    pub(crate) fn rational_vertices(&self) -> Vec<RatVec> {
        self.vertices.iter().map(|v| to_rat(v)).collect()
    }

    pub(crate) fn hull_data(&self) -> &HullData {
        self.cache.hull.get_or_init(|| {
            let (verts, data) = hull::hull_points(&self.rational_vertices());
            debug_assert_eq!(verts.len(), self.vertices.len());
            data
        })
    }

    /// All non-empty faces, the polytope itself first.
    pub(crate) fn face_data(&self) -> &[FaceData] {
        self.cache
            .faces
            .get_or_init(|| enumerate_faces(&self.rational_vertices(), self.hull_data()))
    }

    pub fn dim(&self) -> usize {
        self.hull_data().dim
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Inner facet normals `a` with offsets `b`, so that the polytope lies in
    /// `<a, x> >= b`; together with `equations()` they cut out the polytope.
    pub fn facet_inequalities(&self) -> &[(IntVec, BigInt)] {
        &self.hull_data().facets
    }

    /// Affine equations `<a, x> = b` of the affine hull.
    pub fn equations(&self) -> &[(IntVec, BigInt)] {
        &self.hull_data().equations
    }

    /// All non-empty faces, the polytope itself included.
    pub fn faces(&self) -> Vec<LatticePolytope> {
        self.face_data()
            .iter()
            .map(|f| self.sub_polytope(&f.vertices))
            .collect()
    }

    pub(crate) fn sub_polytope(&self, set: &fixedbitset::FixedBitSet) -> LatticePolytope {
        let verts = set.ones().map(|i| self.vertices[i].clone()).collect();
        LatticePolytope::from_vertices_unchecked(self.ambient_rank, verts)
    }

    pub fn support_value(&self, w: &[BigRational]) -> Result<BigRational> {
        check_covector(self.ambient_rank, w)?;
        Ok(self
            .vertices
            .iter()
            .map(|v| dot_int_rat(v, w))
            .min()
            .expect("polytopes are non-empty"))
    }

    /// The face on which `<w, .>` is minimized.
    pub fn face(&self, w: &[BigRational]) -> Result<LatticePolytope> {
        let m = self.support_value(w)?;
        let verts: Vec<IntVec> = self
            .vertices
            .iter()
            .filter(|v| dot_int_rat(v, w) == m)
            .cloned()
            .collect();
        if verts.len() == self.vertices.len() {
            return Ok(self.clone());
        }
        Ok(LatticePolytope::from_vertices_unchecked(self.ambient_rank, verts))
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "Minkowski sum of polytopes in ranks {} and {}",
                self.ambient_rank, other.ambient_rank
            )));
        }
        if other.is_point() {
            return Ok(self.translate(&other.vertices[0]));
        }
        if self.is_point() {
            return Ok(other.translate(&self.vertices[0]));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(add_vec(a, b));
            }
        }
        LatticePolytope::new(self.ambient_rank, &pts)
    }

    pub fn translate(&self, t: &[BigInt]) -> LatticePolytope {
        let verts = self.vertices.iter().map(|v| add_vec(v, t)).collect();
        LatticePolytope::from_vertices_unchecked(self.ambient_rank, verts)
    }

    /// `k * P` for an integer `k`.
    pub fn scale(&self, k: &BigInt) -> LatticePolytope {
        if k.is_zero() {
            return LatticePolytope::point(vec![BigInt::zero(); self.ambient_rank]);
        }
        let verts = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        LatticePolytope::from_vertices_unchecked(self.ambient_rank, verts)
    }

    /// Coordinatewise minimum over the vertices.
    pub fn min_corner(&self) -> IntVec {
        (0..self.ambient_rank)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v[i].clone())
                    .min()
                    .expect("polytopes are non-empty")
            })
            .collect()
    }

    /// The translate whose coordinatewise minimum is the origin.
    pub fn normalized_to_origin(&self) -> LatticePolytope {
        let m: IntVec = self.min_corner().iter().map(|x| -x).collect();
        self.translate(&m)
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl Hash for LatticePolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.vertices.hash(state);
    }
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "LatticePolytope(rank {}, {:?})", self.ambient_rank, vs)
    }
}

/// Convex hull of finitely many rational points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    ambient_rank: usize,
    vertices: Vec<RatVec>,
}

impl RationalPolytope {
    pub fn new(ambient_rank: usize, points: &[RatVec]) -> Result<Self> {
        check_points(ambient_rank, points)?;
        let (vertices, _) = hull::hull_points(points);
        Ok(RationalPolytope {
            ambient_rank,
            vertices,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        hull::hull_points(&self.vertices).1.dim
    }

    pub fn scale(&self, s: &BigRational) -> RationalPolytope {
        if s.is_zero() {
            return RationalPolytope {
                ambient_rank: self.ambient_rank,
                vertices: vec![vec![BigRational::zero(); self.ambient_rank]],
            };
        }
        let mut vertices: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * s).collect())
            .collect();
        vertices.sort();
        RationalPolytope {
            ambient_rank: self.ambient_rank,
            vertices,
        }
    }

    pub fn support_value(&self, w: &[BigRational]) -> Result<BigRational> {
        check_covector(self.ambient_rank, w)?;
        Ok(self
            .vertices
            .iter()
            .map(|v| dot_rat(v, w))
            .min()
            .expect("polytopes are non-empty"))
    }

    /// The lattice polytope with the same vertices, if they are all integral.
    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        let verts: Option<Vec<IntVec>> = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect()
            })
            .collect();
        Some(LatticePolytope::from_vertices_unchecked(self.ambient_rank, verts?))
    }
}

impl From<&LatticePolytope> for RationalPolytope {
    fn from(p: &LatticePolytope) -> Self {
        RationalPolytope {
            ambient_rank: p.ambient_rank,
            vertices: p.rational_vertices(),
        }
    }
}

impl fmt::Debug for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "RationalPolytope(rank {}, {:?})", self.ambient_rank, vs)
    }
}

/// Vertex set of the convex hull of rational points.
pub fn hull(ambient_rank: usize, points: &[RatVec]) -> Result<RationalPolytope> {
    RationalPolytope::new(ambient_rank, points)
}

/// Vertex set of the convex hull of integer points.
pub fn lattice_hull(ambient_rank: usize, points: &[IntVec]) -> Result<LatticePolytope> {
    LatticePolytope::new(ambient_rank, points)
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    p.minkowski_sum(q)
}

/// Minkowski sum of a non-empty list of polytopes.
pub fn minkowski_sum_all(polytopes: &[LatticePolytope]) -> Result<LatticePolytope> {
    let (first, rest) = polytopes.split_first().ok_or(Error::EmptyInput)?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.minkowski_sum(p))
}

/// Dimension of the Minkowski sum of the given polytopes.
pub fn minkowski_dim(polytopes: &[&LatticePolytope]) -> usize {
    let dirs: Vec<IntVec> = polytopes
        .iter()
        .flat_map(|p| {
            let base = &p.vertices[0];
            p.vertices[1..]
                .iter()
                .map(move |v| crate::exact::sub_vec(v, base))
        })
        .collect();
    crate::exact::rank(&dirs)
}

pub fn face(p: &LatticePolytope, w: &[BigRational]) -> Result<LatticePolytope> {
    p.face(w)
}

pub fn support_value(p: &LatticePolytope, w: &[BigRational]) -> Result<BigRational> {
    p.support_value(w)
}

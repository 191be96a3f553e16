use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dd::hrep_to_vrep;
use crate::error::{Error, Result};
use crate::exact::{
    clear_denominators, dot, dot_int_rat, dot_rat, neg_vec, primitive, rational_inverse, to_rat,
    IntMatrix, IntVec, RatVec, Sublattice,
};

/// A rational polyhedral cone in `Q^n`, held in both representations.
///
/// Rays are primitive, orthogonal to the lineality space and sorted; facet
/// normals are primitive inner normals lying in the linear span of the cone.
/// Both are canonical, so structural equality is equality of cones.
#[derive(Clone)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    lineality: Sublattice,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
    span: Sublattice,
}

fn check_len(n: usize, vs: &[IntVec]) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch(format!(
            "vector of length {} in Q^{}",
            v.len(),
            n
        ))),
        None => Ok(()),
    }
}

/// Orthogonal projection onto the complement of the row span of `basis`.
struct Projector {
    basis: Vec<RatVec>,
    gram_inv: Vec<RatVec>,
}

impl Projector {
    fn new(basis: &[IntVec]) -> Self {
        let basis: Vec<RatVec> = basis.iter().map(|b| to_rat(b)).collect();
        let gram: Vec<RatVec> = basis
            .iter()
            .map(|a| basis.iter().map(|b| dot_rat(a, b)).collect())
            .collect();
        let gram_inv = rational_inverse(&gram).expect("basis rows are independent");
        Projector { basis, gram_inv }
    }

    fn project(&self, v: &[BigInt]) -> IntVec {
        if self.basis.is_empty() {
            return v.to_vec();
        }
        let b: RatVec = self.basis.iter().map(|row| dot_int_rat(v, row)).collect();
        let coeffs: RatVec = self
            .gram_inv
            .iter()
            .map(|row| dot_rat(row, &b))
            .collect();
        let mut out = to_rat(v);
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(row) {
                *o -= c * x;
            }
        }
        clear_denominators(&out)
    }
}

fn canonical_set(vs: impl IntoIterator<Item = IntVec>) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = vs.into_iter().filter_map(|v| primitive(&v).ok()).collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    fn assemble(
        ambient_rank: usize,
        lineality_gens: &[IntVec],
        ray_gens: &[IntVec],
        facet_gens: &[IntVec],
    ) -> Cone {
        let lineality = Sublattice::from_generators(ambient_rank, lineality_gens)
            .expect("lengths checked")
            .saturate();
        let lin_basis = lineality.basis_rows();
        let lp = Projector::new(&lin_basis);
        let rays = canonical_set(ray_gens.iter().map(|r| lp.project(r)));
        let mut span_gens = lin_basis;
        span_gens.extend(rays.iter().cloned());
        let span = Sublattice::from_generators(ambient_rank, &span_gens)
            .expect("lengths checked")
            .saturate();
        let equations = span.orthogonal().basis_rows();
        let ep = Projector::new(&equations);
        let facets = canonical_set(facet_gens.iter().map(|f| ep.project(f)));
        Cone {
            ambient_rank,
            rays,
            lineality,
            facets,
            equations,
            span,
        }
    }

    /// The cone generated by `rays` together with the linear span of
    /// `lineality`.
    pub fn new(ambient_rank: usize, rays: &[IntVec], lineality: &[IntVec]) -> Result<Cone> {
        check_len(ambient_rank, rays)?;
        check_len(ambient_rank, lineality)?;
        let mut gens: Vec<IntVec> = rays.to_vec();
        for l in lineality {
            gens.push(l.clone());
            gens.push(neg_vec(l));
        }
        let dual = hrep_to_vrep(ambient_rank, &gens, &[]);
        let primal = hrep_to_vrep(ambient_rank, &dual.rays, &dual.lineality);
        Ok(Cone::assemble(
            ambient_rank,
            &primal.lineality,
            &primal.rays,
            &dual.rays,
        ))
    }

    /// `{x : <a, x> >= 0 for a in ineqs, <b, x> = 0 for b in eqs}`.
    pub fn from_inequalities(
        ambient_rank: usize,
        ineqs: &[IntVec],
        eqs: &[IntVec],
    ) -> Result<Cone> {
        check_len(ambient_rank, ineqs)?;
        check_len(ambient_rank, eqs)?;
        let primal = hrep_to_vrep(ambient_rank, ineqs, eqs);
        let mut gens = primal.rays.clone();
        for l in &primal.lineality {
            gens.push(l.clone());
            gens.push(neg_vec(l));
        }
        let dual = hrep_to_vrep(ambient_rank, &gens, &[]);
        Ok(Cone::assemble(
            ambient_rank,
            &primal.lineality,
            &primal.rays,
            &dual.rays,
        ))
    }

    pub fn origin(n: usize) -> Cone {
        Cone::assemble(n, &[], &[], &[])
    }

    pub fn whole_space(n: usize) -> Cone {
        let basis = Sublattice::full(n).basis_rows();
        Cone::assemble(n, &basis, &[], &[])
    }

    /// The ray spanned by a non-zero vector.
    pub fn ray(v: &[BigInt]) -> Result<Cone> {
        let p = primitive(v)?;
        Ok(Cone::assemble(v.len(), &[], std::slice::from_ref(&p), std::slice::from_ref(&p)))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.rank() == 0
    }

    /// Primitive inner facet normals, taken inside the linear span.
    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facets
    }

    /// A basis of the linear forms vanishing on the cone.
    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// `span(C) ∩ Z^n`.
    pub fn span_lattice(&self) -> &Sublattice {
        &self.span
    }

    /// Rays followed by both signs of each lineality basis vector.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.rays.clone();
        for l in self.lineality.basis_rows() {
            g.push(neg_vec(&l));
            g.push(l);
        }
        g
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.ambient_rank
            && self.equations.iter().all(|e| dot_int_rat(e, x).is_zero())
            && self.facets.iter().all(|f| !dot_int_rat(f, x).is_negative())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        x.len() == self.ambient_rank
            && self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn relint_contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.ambient_rank
            && self.equations.iter().all(|e| dot_int_rat(e, x).is_zero())
            && self.facets.iter().all(|f| dot_int_rat(f, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.ambient_rank == self.ambient_rank
            && other.generators().iter().all(|g| self.contains_int(g))
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let tight: Vec<IntVec> = other
            .facets
            .iter()
            .filter(|f| self.generators().iter().all(|g| dot(f, g).is_zero()))
            .cloned()
            .collect();
        let mut eqs = other.equations.clone();
        eqs.extend(tight);
        Cone::from_inequalities(self.ambient_rank, &other.facets, &eqs)
            .map(|f| f == *self)
            .unwrap_or(false)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if other.ambient_rank != self.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "cones in Q^{} and Q^{}",
                self.ambient_rank, other.ambient_rank
            )));
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient_rank, &ineqs, &eqs)
    }

    /// The face on which the facet normal `f` vanishes.
    pub fn face_of_normal(&self, f: &[BigInt]) -> Cone {
        let rays: Vec<IntVec> = self
            .rays
            .iter()
            .filter(|r| dot(f, r).is_zero())
            .cloned()
            .collect();
        let lin = self.lineality.basis_rows();
        Cone::new(self.ambient_rank, &rays, &lin).expect("lengths agree")
    }

    /// Facets with their inner normals.
    pub fn facets(&self) -> Vec<(IntVec, Cone)> {
        self.facets
            .iter()
            .map(|f| (f.clone(), self.face_of_normal(f)))
            .collect()
    }

    /// Add the half-space `<h, x> >= 0`.
    pub fn cut(&self, h: &[BigInt]) -> Cone {
        let mut ineqs = self.facets.clone();
        ineqs.push(h.to_vec());
        Cone::from_inequalities(self.ambient_rank, &ineqs, &self.equations)
            .expect("lengths agree")
    }

    /// Whether the hyperplane `h^⊥` meets the relative interior without
    /// containing the cone.
    pub fn is_cut_by(&self, h: &[BigInt]) -> bool {
        if self
            .lineality
            .basis_rows()
            .iter()
            .any(|l| !dot(h, l).is_zero())
        {
            return true;
        }
        let mut pos = false;
        let mut neg = false;
        for r in &self.rays {
            let v = dot(h, r);
            pos |= v.is_positive();
            neg |= v.is_negative();
        }
        pos && neg
    }

    pub fn image(&self, a: &IntMatrix) -> Result<Cone> {
        if a.cols() != self.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a cone in Q^{}",
                a.rows(),
                a.cols(),
                self.ambient_rank
            )));
        }
        let rays = self
            .rays
            .iter()
            .map(|r| a.apply(r))
            .collect::<Result<Vec<_>>>()?;
        let lin = self
            .lineality
            .basis_rows()
            .iter()
            .map(|l| a.apply(l))
            .collect::<Result<Vec<_>>>()?;
        Cone::new(a.rows(), &rays, &lin)
    }

    /// A point of the relative interior: the sum of the rays, or with a seed
    /// a pseudo-random strictly positive combination of the rays plus a
    /// pseudo-random lineality vector.
    pub fn relint_point(&self, seed: Option<u64>) -> RatVec {
        let mut out = vec![BigRational::zero(); self.ambient_rank];
        let Some(seed) = seed else {
            for r in &self.rays {
                for (o, x) in out.iter_mut().zip(r) {
                    *o += BigRational::from_integer(x.clone());
                }
            }
            return out;
        };
        const DEN: i64 = 997;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let den = BigInt::from(DEN);
        for r in &self.rays {
            let c = BigRational::new(BigInt::from(DEN + rng.gen_range(1..DEN)), den.clone());
            for (o, x) in out.iter_mut().zip(r) {
                *o += &c * BigRational::from_integer(x.clone());
            }
        }
        for l in self.lineality.basis_rows() {
            let c = BigRational::new(BigInt::from(rng.gen_range(-DEN..=DEN)), den.clone());
            for (o, x) in out.iter_mut().zip(&l) {
                *o += &c * BigRational::from_integer(x.clone());
            }
        }
        out
    }

    /// A rational point `v` of the linear span with `a v = w`, if any.
    pub(crate) fn span_preimage(&self, a: &IntMatrix, w: &[BigRational]) -> Option<RatVec> {
        let basis = self.span.basis_rows();
        let images: Vec<IntVec> = basis.iter().map(|b| a.apply(b).expect("shape")).collect();
        // solve sum_j c_j images_j = w
        let rows: Vec<RatVec> = (0..a.rows())
            .map(|i| images.iter().map(|im| BigRational::from_integer(im[i].clone())).collect())
            .collect();
        let c = if basis.is_empty() {
            if w.iter().all(Zero::is_zero) {
                Vec::new()
            } else {
                return None;
            }
        } else {
            crate::exact::solve_rational(&rows, w)?
        };
        let mut v = vec![BigRational::zero(); self.ambient_rank];
        for (cj, b) in c.iter().zip(&basis) {
            for (o, x) in v.iter_mut().zip(b) {
                *o += cj * BigRational::from_integer(x.clone());
            }
        }
        Some(v)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.lineality == other.lineality
            && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.lineality.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_rank, self.dim(), &self.lineality, &self.rays).cmp(&(
            other.ambient_rank,
            other.dim(),
            &other.lineality,
            &other.rays,
        ))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |vs: &[IntVec]| -> Vec<Vec<String>> {
            vs.iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        write!(f, "Cone(rays {:?}", show(&self.rays))?;
        if self.lineality.rank() > 0 {
            write!(f, ", lineality {:?}", show(&self.lineality.basis_rows()))?;
        }
        write!(f, ")")
    }
}

/// `N ∩ span(C)`.
pub fn span_lattice(c: &Cone) -> Sublattice {
    c.span_lattice().clone()
}

pub fn relint_point(c: &Cone, seed: Option<u64>) -> RatVec {
    c.relint_point(seed)
}

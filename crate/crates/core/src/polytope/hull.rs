//! Exact convex hulls of finite point sets in any dimension.

use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dd::hrep_to_vrep;
use crate::exact::{clear_denominators, dot, rank, sub_vec, IntVec, RatVec};

/// Facet and equation data of a polytope with its vertices in a fixed order.
///
/// An inequality `(a, b)` means `<a, x> >= b`; an equation means equality.
#[derive(Clone, Debug)]
pub(crate) struct HullData {
    pub dim: usize,
    pub equations: Vec<(IntVec, BigInt)>,
    pub facets: Vec<(IntVec, BigInt)>,
    /// For each facet, the vertices lying on it.
    pub incidence: Vec<FixedBitSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FaceData {
    pub vertices: FixedBitSet,
    pub facets: FixedBitSet,
    pub dim: usize,
}

fn homogenize(p: &[num_rational::BigRational]) -> IntVec {
    let mut v = Vec::with_capacity(p.len() + 1);
    v.push(num_rational::BigRational::one());
    v.extend(p.iter().cloned());
    clear_denominators(&v)
}

fn split_hom(h: &IntVec) -> (IntVec, BigInt) {
    (h[1..].to_vec(), -h[0].clone())
}

/// Affine dimension of a set of homogenized points.
fn affine_dim(points: &[IntVec]) -> usize {
    rank(points).saturating_sub(1)
}

/// Vertices (as indices into the deduplicated, sorted input) and hull data.
pub(crate) fn hull_points(points: &[RatVec]) -> (Vec<RatVec>, HullData) {
    let set: BTreeSet<RatVec> = points.iter().cloned().collect();
    let pts: Vec<RatVec> = set.into_iter().collect();
    let n = pts.first().map_or(0, |p| p.len());
    let hom: Vec<IntVec> = pts.iter().map(|p| homogenize(p)).collect();
    if pts.len() == 1 {
        let g = &hom[0];
        let equations = (0..n)
            .map(|i| {
                let mut a = vec![BigInt::zero(); n];
                a[i] = g[0].clone();
                (a, g[i + 1].clone())
            })
            .collect();
        let data = HullData {
            dim: 0,
            equations,
            facets: Vec::new(),
            incidence: Vec::new(),
        };
        return (pts, data);
    }

    let dual = hrep_to_vrep(n + 1, &hom, &[]);
    let equations: Vec<(IntVec, BigInt)> = dual.lineality.iter().map(split_hom).collect();
    let mut facets = Vec::new();
    let mut tight: Vec<FixedBitSet> = Vec::new();
    for h in &dual.rays {
        let mut z = FixedBitSet::with_capacity(pts.len());
        for (j, g) in hom.iter().enumerate() {
            if dot(h, g).is_zero() {
                z.insert(j);
            }
        }
        if z.count_ones(..) == 0 {
            continue;
        }
        facets.push(split_hom(h));
        tight.push(z);
    }

    // a point is a vertex unless its tight-facet set is contained in another's
    let by_point: Vec<FixedBitSet> = (0..pts.len())
        .map(|j| {
            let mut s = FixedBitSet::with_capacity(facets.len());
            for (f, z) in tight.iter().enumerate() {
                if z.contains(j) {
                    s.insert(f);
                }
            }
            s
        })
        .collect();
    let keep: Vec<usize> = (0..pts.len())
        .filter(|&j| {
            !(0..pts.len()).any(|k| k != j && by_point[j].is_subset(&by_point[k]))
        })
        .collect();

    let incidence = tight
        .iter()
        .map(|z| {
            let mut s = FixedBitSet::with_capacity(keep.len());
            for (new, &old) in keep.iter().enumerate() {
                if z.contains(old) {
                    s.insert(new);
                }
            }
            s
        })
        .collect();
    let dim = n - equations.len();
    let vertices = keep.iter().map(|&j| pts[j].clone()).collect();
    (
        vertices,
        HullData {
            dim,
            equations,
            facets,
            incidence,
        },
    )
}

/// Dimension of the convex hull of the selected vertices.
pub(crate) fn subset_dim(vertices: &[RatVec], set: &FixedBitSet) -> usize {
    let hom: Vec<IntVec> = set.ones().map(|i| homogenize(&vertices[i])).collect();
    affine_dim(&hom)
}

/// All non-empty faces, the polytope itself first, as closures of facet
/// intersections.
pub(crate) fn enumerate_faces(vertices: &[RatVec], hull: &HullData) -> Vec<FaceData> {
    let nv = vertices.len();
    let mut all = FixedBitSet::with_capacity(nv);
    all.insert_range(..);
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut order: Vec<FixedBitSet> = vec![all.clone()];
    seen.insert(all.clone(), 0);
    let mut queue = VecDeque::from([all]);
    while let Some(f) = queue.pop_front() {
        for inc in &hull.incidence {
            let mut g = f.clone();
            g.intersect_with(inc);
            if g.count_ones(..) == 0 || seen.contains_key(&g) {
                continue;
            }
            seen.insert(g.clone(), order.len());
            order.push(g.clone());
            queue.push_back(g);
        }
    }
    order
        .into_iter()
        .map(|v| {
            let mut facets = FixedBitSet::with_capacity(hull.facets.len());
            for (j, inc) in hull.incidence.iter().enumerate() {
                if v.is_subset(inc) {
                    facets.insert(j);
                }
            }
            let dim = subset_dim(vertices, &v);
            FaceData {
                vertices: v,
                facets,
                dim,
            }
        })
        .collect()
}

/// Edge vectors `v_i - v_0` with denominators cleared per vector.
pub(crate) fn difference_directions(points: &[RatVec]) -> Vec<IntVec> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let base = homogenize(first);
    points[1..]
        .iter()
        .map(|p| {
            let h = homogenize(p);
            // h/h0 - base/base0, scaled by h0*base0
            let a: IntVec = h[1..].iter().map(|x| x * &base[0]).collect();
            let b: IntVec = base[1..].iter().map(|x| x * &h[0]).collect();
            sub_vec(&a, &b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_vec;

    #[test]
    fn midpoint_and_center_are_dropped() {
        let (v, h) = hull_points(&[
            rat_vec(&[0, 0]),
            rat_vec(&[1, 0]),
            rat_vec(&[2, 0]),
            rat_vec(&[0, 1]),
        ]);
        assert_eq!(v, vec![rat_vec(&[0, 0]), rat_vec(&[0, 1]), rat_vec(&[2, 0])]);
        assert_eq!(h.dim, 2);
        assert_eq!(h.facets.len(), 3);

        let (v, _) = hull_points(&[
            rat_vec(&[0, 0]),
            rat_vec(&[2, 0]),
            rat_vec(&[0, 2]),
            rat_vec(&[2, 2]),
            rat_vec(&[1, 1]),
        ]);
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn lower_dimensional_hull() {
        let (v, h) = hull_points(&[rat_vec(&[0, 0, 1]), rat_vec(&[3, 3, 1]), rat_vec(&[1, 1, 1])]);
        assert_eq!(v, vec![rat_vec(&[0, 0, 1]), rat_vec(&[3, 3, 1])]);
        assert_eq!(h.dim, 1);
        assert_eq!(h.equations.len(), 2);
        let faces = enumerate_faces(&v, &h);
        assert_eq!(faces.len(), 3);
    }

    #[test]
    fn cube_faces() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(rat_vec(&[x, y, z]));
                }
            }
        }
        let (v, h) = hull_points(&pts);
        assert_eq!(v.len(), 8);
        assert_eq!(h.facets.len(), 6);
        let faces = enumerate_faces(&v, &h);
        let count = |d| faces.iter().filter(|f| f.dim == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (8, 12, 6, 1));
    }
}

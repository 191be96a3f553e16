//! Double description conversion from inequalities to generators.
//!
//! Input is a cone `{x : A x >= 0, B x = 0}` with integer rows. The cone is
//! reduced to a pointed cone in the row space of `A` restricted to `ker B`,
//! converted by the incremental double description method with the
//! combinatorial adjacency test, and mapped back to `Z^n`.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exact::matrix::integer_kernel_rows;
use crate::exact::{
    clear_denominators, dot, primitive, rational_inverse, to_rat, IntVec, RatVec,
};

/// Generators of a polyhedral cone: a basis of its lineality space and one
/// primitive representative per extreme ray of the pointed quotient.
#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

fn mat_vec(k: &[IntVec], y: &[BigInt]) -> IntVec {
    // k is a list of column vectors; returns sum y_j * k_j
    let n = k.first().map_or(0, |c| c.len());
    let mut out = vec![BigInt::zero(); n];
    for (col, c) in k.iter().zip(y) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col) {
            *o += c * x;
        }
    }
    out
}

/// Rows of `rows` that are linearly independent, chosen greedily, together
/// with a set of pivot columns on which the chosen rows are invertible.
fn independent_rows(rows: &[IntVec]) -> (Vec<usize>, Vec<usize>) {
    let mut echelon: Vec<(usize, RatVec)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        let mut v = to_rat(r);
        for (p, e) in &echelon {
            if !v[*p].is_zero() {
                let f = &v[*p] / &e[*p];
                for (x, y) in v.iter_mut().zip(e) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((p, v));
            chosen.push(idx);
        }
    }
    let pivots = echelon.iter().map(|(p, _)| *p).collect();
    (chosen, pivots)
}

pub(crate) fn hrep_to_vrep(dim: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Generators {
    let kernel: Vec<IntVec> = if eqs.is_empty() {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| BigInt::from((i == j) as i64))
                    .collect()
            })
            .collect()
    } else {
        integer_kernel_rows(eqs, dim)
    };
    let q = kernel.len();
    if q == 0 {
        return Generators::default();
    }
    // inequalities in kernel coordinates
    let reduced: Vec<IntVec> = ineqs
        .iter()
        .map(|a| kernel.iter().map(|k| dot(a, k)).collect::<IntVec>())
        .filter(|r: &IntVec| r.iter().any(|x| !x.is_zero()))
        .filter_map(|r| primitive(&r).ok())
        .collect();

    let lin_local = integer_kernel_rows(&reduced, q);
    let lineality: Vec<IntVec> = lin_local
        .iter()
        .map(|y| mat_vec(&kernel, y))
        .filter_map(|x| primitive(&x).ok())
        .collect();

    let (basis_idx, pivots) = independent_rows(&reduced);
    let p = basis_idx.len();
    if p == 0 {
        return Generators {
            lineality,
            rays: Vec::new(),
        };
    }
    let basis: Vec<RatVec> = basis_idx.iter().map(|&i| to_rat(&reduced[i])).collect();
    // square submatrix of the basis rows on the pivot columns
    let square: Vec<RatVec> = basis
        .iter()
        .map(|r| pivots.iter().map(|&c| r[c].clone()).collect())
        .collect();
    let square_inv = rational_inverse(&square).expect("pivot columns are independent");

    // every reduced row a equals t * basis with t = a_S * square^{-1}
    let mut constraints: Vec<IntVec> = Vec::with_capacity(reduced.len());
    let mut is_basis = vec![None; reduced.len()];
    for (j, &i) in basis_idx.iter().enumerate() {
        is_basis[i] = Some(j);
    }
    for (i, a) in reduced.iter().enumerate() {
        let row = match is_basis[i] {
            Some(j) => (0..p).map(|l| BigInt::from((l == j) as i64)).collect(),
            None => {
                let a_s: RatVec = pivots.iter().map(|&c| BigRational::from_integer(a[c].clone())).collect();
                let t: RatVec = (0..p)
                    .map(|l| (0..p).map(|m| &a_s[m] * &square_inv[m][l]).sum())
                    .collect();
                primitive(&clear_denominators(&t)).expect("non-zero row")
            }
        };
        constraints.push(row);
    }

    let rays_local = double_description(p, &constraints, &basis_idx);

    // map z back to the row space: y = basis^T (basis basis^T)^{-1} z
    let gram: Vec<RatVec> = basis
        .iter()
        .map(|r| basis.iter().map(|s| crate::exact::dot_rat(r, s)).collect())
        .collect();
    let gram_inv = rational_inverse(&gram).expect("basis rows are independent");
    let rays = rays_local
        .iter()
        .filter_map(|z| {
            let z = to_rat(z);
            let w: RatVec = (0..p)
                .map(|l| (0..p).map(|m| &gram_inv[l][m] * &z[m]).sum())
                .collect();
            let y: RatVec = (0..q)
                .map(|c| (0..p).map(|l| &w[l] * &basis[l][c]).sum())
                .collect();
            let y = clear_denominators(&y);
            primitive(&mat_vec(&kernel, &y)).ok()
        })
        .collect();
    Generators { lineality, rays }
}

struct Ray {
    v: IntVec,
    zeros: FixedBitSet,
}

/// Extreme rays of the pointed cone `{z in Q^p : c z >= 0 for c in constraints}`,
/// where the constraints indexed by `initial` are the unit covectors.
fn double_description(p: usize, constraints: &[IntVec], initial: &[usize]) -> Vec<IntVec> {
    let m = constraints.len();
    let mut rays: Vec<Ray> = (0..p)
        .map(|j| {
            let mut zeros = FixedBitSet::with_capacity(m);
            for (l, &c) in initial.iter().enumerate() {
                if l != j {
                    zeros.insert(c);
                }
            }
            Ray {
                v: (0..p).map(|l| BigInt::from((l == j) as i64)).collect(),
                zeros,
            }
        })
        .collect();
    let mut in_initial = vec![false; m];
    for &c in initial {
        in_initial[c] = true;
    }

    for (ci, c) in constraints.iter().enumerate() {
        if in_initial[ci] {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, val) in rays.iter_mut().zip(&values) {
                if val.is_zero() {
                    r.zeros.insert(ci);
                }
            }
            continue;
        }
        let mut fresh: Vec<Ray> = Vec::new();
        for &i in &pos {
            for &j in &neg {
                let mut common = rays[i].zeros.clone();
                common.intersect_with(&rays[j].zeros);
                if p >= 2 && common.count_ones(..) + 2 < p {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == i || k == j || !common.is_subset(&r.zeros)
                });
                if !adjacent {
                    continue;
                }
                // values[i] > 0 > values[j]
                let a = &values[i];
                let b = -&values[j];
                let v: IntVec = rays[i]
                    .v
                    .iter()
                    .zip(&rays[j].v)
                    .map(|(x, y)| &b * x + a * y)
                    .collect();
                let Ok(v) = primitive(&v) else { continue };
                let mut zeros = common;
                zeros.insert(ci);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (r, val) in rays.into_iter().zip(values) {
            if val.is_positive() {
                next.push(r);
            } else if val.is_zero() {
                let mut r = r;
                r.zeros.insert(ci);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

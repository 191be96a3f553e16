//! Exact integer and rational arithmetic and integer-lattice linear algebra.
//!
//! Everything in the crate is built on [`BigInt`] and [`BigRational`]; there
//! is no floating point anywhere. Vectors are plain `Vec`s, matrices are
//! row-major [`IntMatrix`] values, and sublattices of `Z^n` carry a canonical
//! Hermite basis so that equality is structural.

mod lattice;
pub(crate) mod matrix;
mod rational;

pub use lattice::{lattice_index, saturate, Sublattice};
pub use matrix::{hermite_normal_form, integer_kernel, rank, smith_normal_form, IntMatrix};
pub use rational::{rational_inverse, solve_rational};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntVec = Vec<BigInt>;
pub type RatVec = Vec<BigRational>;

pub fn int_vec(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(xs: &[i64]) -> RatVec {
    xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub fn to_rat(v: &[BigInt]) -> RatVec {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of an integer covector with a rational point.
pub fn dot_int_rat(a: &[BigInt], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += y * BigRational::from_integer(x.clone());
        }
    }
    acc
}

pub fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divide `v` by the gcd of its entries, keeping its sign pattern.
pub fn primitive(v: &[BigInt]) -> Result<IntVec> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Positive multiple of a rational vector with integer entries.
pub fn clear_denominators(v: &[BigRational]) -> IntVec {
    let l = v
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    v.iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect()
}

/// Primitive integer vector pointing in the direction of `v`, or `None` for
/// the zero vector.
pub fn primitive_direction(v: &[BigRational]) -> Option<IntVec> {
    primitive(&clear_denominators(v)).ok()
}

pub(crate) fn sub_vec(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add_vec(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn neg_vec(a: &[BigInt]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

/// Normalize a hyperplane normal up to sign: primitive with first non-zero
/// entry positive.
pub(crate) fn sign_normalized(v: &[BigInt]) -> Option<IntVec> {
    let p = primitive(v).ok()?;
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => Some(neg_vec(&p)),
        _ => Some(p),
    }
}

#[cfg(test)]
pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

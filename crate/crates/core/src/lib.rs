//! Exact tropical elimination.
//!
//! Tropical varieties of generic complete intersections, their push-forwards
//! along monomial maps, tropical implicitization and reconstruction of Newton
//! polytopes, all over exact integer and rational arithmetic.
//!
//! ```
//! use num_bigint::BigInt;
//! use tropelim::eliminate::{pushforward, MonomialMap};
//! use tropelim::exact::{int_vec, IntMatrix};
//! use tropelim::newton::reconstruct_polytope;
//! use tropelim::polytope::LatticePolytope;
//! use tropelim::tropical::{tropical_ci, CompleteIntersectionInput};
//!
//! # fn main() -> tropelim::Result<()> {
//! let p1 = LatticePolytope::from_i64(&[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
//! let p2 = LatticePolytope::from_i64(&[&[0, 0, 0], &[-2, 0, 0], &[0, -2, 0], &[0, 0, -2]]);
//! let curve = tropical_ci(&CompleteIntersectionInput::new(3, vec![p1, p2])?)?;
//! assert_eq!(curve.cones().len(), 6);
//! assert!(curve.cones().iter().all(|(_, m)| *m == BigInt::from(6)));
//!
//! let a = MonomialMap::new(IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]), BigInt::from(1))?;
//! let hexagon = reconstruct_polytope(&pushforward(&curve, &a)?)?;
//! assert!(hexagon.vertices().contains(&int_vec(&[36, 0])));
//! assert_eq!(hexagon.vertices().len(), 6);
//! # Ok(())
//! # }
//! ```

pub mod eliminate;
pub mod error;
pub mod exact;
pub mod fan;
pub mod implicit;
pub mod newton;
pub mod polytope;
pub mod tropical;

pub(crate) mod dd;

pub use error::{Error, Result};

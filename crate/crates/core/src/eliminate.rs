//! Push-forward of tropical cycles under monomial maps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{lattice_index, IntMatrix};
use crate::fan::{refine::span_cells, Cone, TropicalCycle};

/// Retries allowed when a sample point turns out to be degenerate.
pub const MAX_ATTEMPTS: u64 = 32;

/// A torus homomorphism given by an integer `d x n` matrix, together with
/// the degree `δ` of the algebraic map it tropicalizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    matrix: IntMatrix,
    degree: BigInt,
}

impl MonomialMap {
    pub fn new(matrix: IntMatrix, degree: BigInt) -> Result<Self> {
        if !degree.is_positive() {
            return Err(Error::InvalidDegree);
        }
        Ok(MonomialMap { matrix, degree })
    }

    /// The map with degree 1.
    pub fn linear(matrix: IntMatrix) -> Self {
        MonomialMap {
            matrix,
            degree: BigInt::one(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(IntMatrix::identity(n))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn source_rank(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }
}

/// `[N_Π : A(N_Γ)]` for a cone `Γ` mapped onto a cone containing `Π` of the
/// same dimension.
pub fn index_cone_pair(gamma: &Cone, pi: &Cone, a: &IntMatrix) -> Result<BigInt> {
    let image = gamma.image(a)?;
    if image.dim() < gamma.dim() {
        return Err(Error::RankDrop);
    }
    if pi.dim() != gamma.dim() {
        return Err(Error::RankMismatch {
            sub: gamma.dim(),
            sup: pi.dim(),
        });
    }
    if !image.contains_cone(pi) {
        return Err(Error::NotContained);
    }
    let lattice = gamma.span_lattice().image(a)?;
    lattice_index(&lattice, pi.span_lattice())
}

pub fn pushforward(t: &TropicalCycle, map: &MonomialMap) -> Result<TropicalCycle> {
    pushforward_seeded(t, map, 0)
}

/// Push-forward with sample points drawn from `seed`, `seed + 1`, ...
///
/// Cones whose image has smaller dimension contribute nothing; if every
/// cone collapses the map is not generically finite on the cycle and
/// `RankDrop` is returned.
pub fn pushforward_seeded(t: &TropicalCycle, map: &MonomialMap, seed: u64) -> Result<TropicalCycle> {
    let a = map.matrix();
    if a.cols() != t.ambient_rank() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix applied to a cycle in Q^{}",
            a.rows(),
            a.cols(),
            t.ambient_rank()
        )));
    }
    let k = t.dim();
    let d = a.rows();
    let mut sources: Vec<(&Cone, &BigInt, Cone)> = Vec::new();
    for (gamma, m) in t.cones() {
        let image = gamma.image(a)?;
        if image.dim() == k {
            sources.push((gamma, m, image));
        }
    }
    if sources.is_empty() {
        return if t.is_empty() {
            Ok(TropicalCycle::empty(d, k))
        } else {
            Err(Error::RankDrop)
        };
    }
    let images: Vec<&Cone> = sources.iter().map(|(_, _, im)| im).collect();
    let mut out = Vec::new();
    for cell in span_cells(&images) {
        let total = cell_multiplicity(&cell, &sources, a, seed)?;
        if total.is_zero() {
            continue;
        }
        let (q, r) = total.div_rem(map.degree());
        if !r.is_zero() {
            return Err(Error::NonIntegralMultiplicity {
                numerator: total.to_string(),
                degree: map.degree().to_string(),
            });
        }
        out.push((cell, q));
    }
    Ok(TropicalCycle::new(d, k, out)?.merged())
}

/// `Σ m_Γ [N_Π : A(N_Γ)]` over the cones whose image contains the cell,
/// detected through the preimage of a generic point of the cell.
fn cell_multiplicity(
    cell: &Cone,
    sources: &[(&Cone, &BigInt, Cone)],
    a: &IntMatrix,
    seed: u64,
) -> Result<BigInt> {
    'attempt: for s in seed..seed + MAX_ATTEMPTS {
        let w = cell.relint_point(Some(s));
        let mut total = BigInt::zero();
        for (gamma, m, image) in sources {
            if image.span_lattice() != cell.span_lattice() || !image.contains(&w) {
                continue;
            }
            let Some(v) = gamma.span_preimage(a, &w) else {
                continue 'attempt;
            };
            if !gamma.relint_contains(&v) {
                continue 'attempt;
            }
            let lattice = gamma.span_lattice().image(a)?;
            total += *m * lattice_index(&lattice, cell.span_lattice())?;
        }
        return Ok(total);
    }
    Err(Error::GenericityFailure {
        attempts: MAX_ATTEMPTS as usize,
    })
}

use thiserror::Error;

/// Errors raised by the library. Every variant corresponds to a violated
/// mathematical precondition except [`Error::GenericityFailure`], which
/// reports that no sufficiently generic evaluation point was found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix entry count {len} does not match {rows}x{cols}")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("lattices have different ranks ({sub} vs {sup}); the index is infinite")]
    RankMismatch { sub: usize, sup: usize },
    #[error("sublattice is not contained in the superlattice")]
    NotContained,
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
    #[error("empty input")]
    EmptyInput,
    #[error("affine span does not match the reference lattice: {0}")]
    SpanMismatch(String),
    #[error("polytope vertices are not points of the reference lattice")]
    NonLatticePolytope,
    #[error("cycle is not pure-dimensional: expected dimension {expected}, found {found}")]
    NotPure { expected: usize, found: usize },
    #[error("multiplicities must be positive")]
    NonPositiveMultiplicity,
    #[error("the complete intersection is empty")]
    EmptyVariety,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("a point has no tropical hypersurface")]
    ZeroDimensional,
    #[error("linear map drops the dimension of every cone of the cycle")]
    RankDrop,
    #[error("multiplicity {numerator}/{degree} is not an integer")]
    NonIntegralMultiplicity { numerator: String, degree: String },
    #[error("no generic point found after {attempts} attempts")]
    GenericityFailure { attempts: usize },
    #[error("support function is not linear on the given cone")]
    NotNormalFanCone,
    #[error("parametrization is degenerate: {0}")]
    DegenerateParametrization(String),
    #[error("base point lies on the support of the cycle")]
    OnSupport,
    #[error("cycle is not balanced")]
    NotBalanced,
    #[error("degree must be a positive integer")]
    InvalidDegree,
}

impl Error {
    /// Whether this error signals a failed search for a generic point rather
    /// than a violated precondition.
    pub fn is_genericity_failure(&self) -> bool {
        matches!(self, Error::GenericityFailure { .. })
    }

    /// Short stable name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape { .. } => "Shape",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::NotContained => "NotContained",
            Error::ZeroVector => "ZeroVector",
            Error::EmptyInput => "EmptyInput",
            Error::SpanMismatch(_) => "SpanMismatch",
            Error::NonLatticePolytope => "NonLatticePolytope",
            Error::NotPure { .. } => "NotPure",
            Error::NonPositiveMultiplicity => "NonPositiveMultiplicity",
            Error::EmptyVariety => "EmptyVariety",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::ZeroDimensional => "ZeroDimensional",
            Error::RankDrop => "RankDrop",
            Error::NonIntegralMultiplicity { .. } => "NonIntegralMultiplicity",
            Error::GenericityFailure { .. } => "GenericityFailure",
            Error::NotNormalFanCone => "NotNormalFanCone",
            Error::DegenerateParametrization(_) => "DegenerateParametrization",
            Error::OnSupport => "OnSupport",
            Error::NotBalanced => "NotBalanced",
            Error::InvalidDegree => "InvalidDegree",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

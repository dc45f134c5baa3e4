use num_bigint::BigInt;
use thiserror::Error;

use crate::hodge::TwistRejection;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants are grouped by the layer that raises them. The CLI maps
/// [`Error::exit_code`] onto its process exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix dimensions must be positive")]
    EmptyMatrix,
    #[error("matrix rows have unequal lengths")]
    RaggedRows,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("degenerate bilinear form (determinant 0)")]
    Degenerate,
    #[error("odd lattice: diagonal entry {index} equals {value}")]
    OddLattice { index: usize, value: BigInt },
    #[error("unknown catalog lattice `{0}` (expected U, E8, E8_minus or LambdaK3)")]
    UnknownCatalog(String),
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("sublattice basis rows are linearly dependent")]
    DependentBasis,
    #[error("sublattice is degenerate")]
    DegenerateSublattice,
    #[error("divisibility of the zero vector is undefined")]
    ZeroVector,

    #[error("invalid endomorphism generator: {0}")]
    InvalidGenerator(String),
    #[error("endomorphism lies outside the modeled algebra Q(g)")]
    OutsideEndomorphismAlgebra,
    #[error("twist rejected: {0}")]
    TwistRejected(TwistRejection),
    #[error("invalid Hodge isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("model has a non-scalar endomorphism generator")]
    NonScalarGenerator,

    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid glue data: {0}")]
    InvalidGlue(String),

    #[error("premise rejected: {0}")]
    PremiseRejected(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("internal assertion failed: {0}")]
    AssertionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AssertionFailed(_) => 3,
            Error::Parse(_) | Error::MalformedCertificate(_) => 65,
            _ => 2,
        }
    }

    /// Short machine-readable tag for JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyMatrix
            | Error::RaggedRows
            | Error::NotSquare { .. }
            | Error::DimensionMismatch(_)
            | Error::Singular
            | Error::NotSymmetric => "matrix",
            Error::Degenerate
            | Error::OddLattice { .. }
            | Error::UnknownCatalog(_)
            | Error::ZeroScale
            | Error::DependentBasis
            | Error::DegenerateSublattice
            | Error::ZeroVector => "lattice",
            Error::InvalidGenerator(_)
            | Error::OutsideEndomorphismAlgebra
            | Error::TwistRejected(_)
            | Error::InvalidIsomorphism(_)
            | Error::NonScalarGenerator => "hodge",
            Error::InvalidModel(_) | Error::InvalidGlue(_) => "model",
            Error::PremiseRejected(_) => "premise",
            Error::MalformedCertificate(_) => "certificate",
            Error::AssertionFailed(_) => "assertion",
            Error::Parse(_) => "parse",
        }
    }
}

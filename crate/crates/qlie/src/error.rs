//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("gram matrix is not symmetric at entry ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("bracket index out of range or not i<j: ({i},{j},{k})")]
    BadBracketIndex { i: usize, j: usize, k: usize },
    #[error("duplicate bracket entry for ({i},{j},{k})")]
    DuplicateBracket { i: usize, j: usize, k: usize },
    #[error("zero coefficient in bracket entry ({i},{j},{k})")]
    ZeroBracketCoefficient { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on basis triple ({i},{j},{k})")]
    JacobiFailure { i: usize, j: usize, k: usize },
    #[error("algebra is not solvable")]
    NonSolvable,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("subspace is not totally isotropic")]
    NotIsotropic,
    #[error("subspace is not central")]
    NotCentral,
    #[error("algebra is abelian")]
    Abelian,
    #[error("form is not nil-invariant")]
    NotNilInvariant,
    #[error("map is not skew-symmetric for the form")]
    NotSkew,
    #[error("map is not a derivation")]
    NotDerivation,
    #[error("skew pairing condition fails on basis vectors")]
    InvalidPairing,
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("orthogonal complement of the chosen ideal is not an ideal")]
    OrthogonalNotIdeal,
    #[error("no rational isotropic vector found by the bounded search")]
    NoRationalIsotropicVector,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

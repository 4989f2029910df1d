use num_bigint::BigInt;
use thiserror::Error;

use crate::dsl::ParseError;
use crate::linalg::IntVec2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("vector {0} is not primitive")]
    NotPrimitive(IntVec2),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has determinant {0}, expected 1 or -1")]
    NotUnimodular(BigInt),
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge label `{0}`")]
    DuplicateEdge(String),
    #[error("p and q must have equal, positive length (got {p} and {q})")]
    GpqLength { p: usize, q: usize },
    #[error("search bounds must be at least 1")]
    InvalidBounds,
    #[error("equitable-set check failed: {0}")]
    NotEquitable(String),
    #[error("determinant condition fails at edge {edge}: |det[{pivot}, v]| = {lhs} but |det[{pivot}, w]| = {rhs}")]
    DeterminantCondition {
        edge: usize,
        pivot: Box<IntVec2>,
        lhs: BigInt,
        rhs: BigInt,
    },
    #[error("no linearly independent edge pair")]
    NoIndependentPair,
    #[error("{0} too large to enumerate")]
    TooLarge(String),
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

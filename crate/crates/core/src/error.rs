use thiserror::Error;

use crate::linalg::{QVector, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero pivot at index {index} with nonzero entries below it")]
    NotDecomposable { index: usize },
    #[error("matrix is not positive definite (pivots: {})", fmt_values(.pivots))]
    NotPositiveDefinite { pivots: Vec<Rational> },
    #[error("square root of a negative number")]
    NegativeInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point set spans an affine subspace of dimension {affine_dim}, expected {dim}")]
    NotFullDimensional { dim: usize, affine_dim: usize },
    #[error("duplicate vertex at index {index}")]
    DuplicateVertex { index: usize },
    #[error("polytope has no points")]
    EmptyInput,
    #[error("inequality system is unbounded")]
    Unbounded,
    #[error("inequality system is infeasible")]
    Empty,
    #[error("facet {facet} takes {} distinct values on the vertices: {}", .values.len(), fmt_values(.values))]
    NotPerfectPrismatoid { facet: usize, values: Vec<Rational> },
    #[error("facet normals span only dimension {rank}, expected {dim}")]
    DegenerateNormals { rank: usize, dim: usize },
    #[error("internal verification failed: {0}")]
    VerificationFailure(String),
    #[error("vertex {index} has non-integer coordinates")]
    NonIntegerVertices { index: usize },
    #[error("point is not in the lattice")]
    NotInLattice,
    #[error("lattice point ({}) violates emptiness", fmt_values(.point))]
    EmptinessViolation { point: QVector },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("polytope is not centrally symmetric")]
    NotCentrallySymmetric,
    #[error("invalid facet index {0}")]
    InvalidFacet(usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_values(values: &[Rational]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

use thiserror::Error;

use crate::simplex::{Simplex, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid simplex {vertices:?}: {reason}")]
    InvalidSimplex {
        vertices: Vec<VertexId>,
        reason: &'static str,
    },

    #[error("facets have mixed dimensions ({first} and {second})")]
    MixedDimensions { first: usize, second: usize },

    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Simplex),

    #[error("operation requires dimension {expected}, got {actual}")]
    WrongDimension { expected: &'static str, actual: i32 },

    #[error("ground set of size {0} is too small (need at least 5)")]
    GroundSetTooSmall(u32),

    #[error("invalid gale candidate: {0}")]
    InvalidCandidate(String),

    #[error("n must be at least 1, got {0}")]
    InvalidN(u32),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("apex {0} is already a vertex of the complex")]
    ApexCollision(VertexId),

    #[error("site ({a},{u}) rejected: E(a,u) is not an interior edge of the ball")]
    SiteRejected { a: u32, u: u32 },

    #[error("site ({a},{u}) is outside A(n) x [n] for n={n}")]
    InvalidSite { a: u32, u: u32, n: u32 },

    #[error("mask has {actual} entries but the sphere has {expected} bipyramids")]
    MaskLengthMismatch { expected: usize, actual: usize },

    #[error("complex has {vertices} vertices, canonicalization bound is {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("2^{sites} triangulations exceed the enumeration limit {limit}")]
    LimitExceeded { sites: usize, limit: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

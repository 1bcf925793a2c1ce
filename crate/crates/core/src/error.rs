use thiserror::Error;

use crate::complex::VertexSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex label {label} is outside 1..={m}")]
    LabelOutOfRange { label: usize, m: usize },

    #[error("vertex {0} does not occur in any facet")]
    MissingVertex(usize),

    #[error("vertex {vertex} is repeated inside facet {facet:?}")]
    DuplicateVertex { vertex: usize, facet: Vec<usize> },

    #[error("complexes on more than {max} vertices are not supported (got {m})")]
    TooManyVertices { m: usize, max: usize },

    #[error("{0} is not a facet of the complex")]
    NotAFacet(VertexSet),

    #[error("complex is not pure")]
    NotPure,

    #[error("{0} is not a missing face of the complex")]
    NotMissingFace(VertexSet),

    #[error("vector of length {got} does not match a chain basis of size {expected}")]
    BasisMismatch { expected: usize, got: usize },

    #[error("cochain in bidegree ({degree}, {subset}) is not a cocycle")]
    NotCocycle { degree: i32, subset: VertexSet },

    #[error("m = {m} exceeds the subset cap {cap}; pass force to override")]
    CapExceeded { m: usize, cap: usize },

    #[error("invalid perfect elimination order: {0}")]
    InvalidEliminationOrder(String),

    #[error("complex is not a certified sphere: {0}")]
    NotCertified(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("malformed sphere decomposition: {0}")]
    MalformedDecomposition(String),

    #[error("integer coefficient does not fit in 64 bits")]
    CoefficientOverflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown generator kind or builtin: {0}")]
    Unknown(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

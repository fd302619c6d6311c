use thiserror::Error;

use crate::complex::Simplex;

#[derive(Debug, Error)]
pub enum NerveError {
    #[error("vertex {0} is not a vertex of the complex")]
    UnknownVertex(usize),

    #[error("simplex {0} is not a member of the complex")]
    NotASimplex(Simplex),

    #[error("simplex must be non-empty")]
    EmptySimplex,

    #[error("vertex map does not send {source_simplex} to a simplex of the target (image {image})")]
    NotSimplicial { source_simplex: Simplex, image: Simplex },

    #[error("vertex map is undefined on vertex {0}")]
    UnmappedVertex(usize),

    #[error("map is not order preserving: {0} <= {1} but images are not comparable")]
    NotOrderPreserving(usize, usize),

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("cover index {0} is not in the index set")]
    UnknownIndex(usize),

    #[error("carried condition fails at index {index}: image of element is not inside target element {target}")]
    NotCarried { index: usize, target: usize },

    #[error("cover element {0} is not a subcomplex of the base")]
    NotASubcomplex(usize),

    #[error("cover elements do not cover simplex {0}")]
    NotACover(Simplex),

    #[error("element {inner} is not contained in element {outer}")]
    NotContained { inner: usize, outer: usize },

    #[error("invalid discrete vector field: {0}")]
    InvalidVectorField(String),

    #[error("modified Hasse diagram has a directed cycle through {0}")]
    CycleDetected(Simplex),

    #[error("critical set is not a subcomplex: {0} has a face outside it")]
    CriticalNotClosed(Simplex),

    #[error("scheduled pair ({free}, {coface}) is not an elementary collapse at its stratum")]
    NotFree { free: Simplex, coface: Simplex },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("resource limit exceeded: {what} exceeds {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, NerveError>;

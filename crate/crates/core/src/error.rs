use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a universe of {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has {0} vertices; at most {max} are supported here", max = crate::vset::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("{what} needs at most {max} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("q must be at least 1")]
    ZeroQ,

    #[error("q = {q} is outside the valid range 1..={max}")]
    QOutOfRange { q: usize, max: usize },

    #[error("the void complex has no {0}")]
    VoidComplex(&'static str),

    #[error("the Alexander dual of the full simplex or the void complex is not defined here")]
    DegenerateDual,

    #[error("join needs disjoint vertex supports")]
    OverlappingJoin,

    #[error("dimension {d} out of range (complex has dimension {dim})")]
    DimensionOutOfRange { d: isize, dim: isize },

    #[error("unsupported graph family `{0}`")]
    UnsupportedFamily(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

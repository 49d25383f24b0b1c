use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the ring, bundle, and degree machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator `{0}`: {1}")]
    BadGenerator(String, &'static str),
    #[error("bad integration table entry: {0}")]
    BadTableEntry(String),
    #[error("values belong to different ring models")]
    ModelMismatch,
    #[error("degree-zero part must be 1 to invert")]
    NonUnitSeries,
    #[error("no integration value for top-degree monomial `{0}`")]
    MissingTableEntry(String),
    #[error("twisting class must be homogeneous of degree 1")]
    NotDegreeOne,
    #[error("character degree-0 term does not match the declared rank")]
    RankMismatch,
    #[error("operation not supported for rank {0}")]
    RankUnsupported(usize),
    #[error("expected a line bundle, found rank {0}")]
    NotLineBundle(usize),
    #[error("non-integral Chern coefficient in {0} (implementation bug)")]
    NonIntegralResult(&'static str),
    #[error("total Chern class has a nonzero component above the declared rank")]
    ChernAboveRank,
    #[error("projectivization requires a bundle of positive rank")]
    ZeroRank,
    #[error("bundle rank {rank} out of range on a variety of dimension {dimension}")]
    RankOutOfRange { rank: usize, dimension: usize },
    #[error("closed-form mode does not match rank {rank} on dimension {dimension}")]
    ModeRankMismatch { rank: usize, dimension: usize },
    #[error("multisection degree must be at least 1, got {0}")]
    BadMultiDegree(i64),
    #[error("model is missing required generator `{0}`")]
    MissingGenerator(&'static str),
    #[error("expected {expected} line-bundle degrees, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("no tabulated discriminant degree for (n, d) = ({0}, {1})")]
    OutOfTable(usize, i64),
    #[error("operation requires a product of projective spaces")]
    UnsupportedVariety,
}

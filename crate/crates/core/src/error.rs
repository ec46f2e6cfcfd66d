use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. `code()` gives the stable machine-readable name used by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero vector")]
    ZeroVector,
    #[error("basis is linearly dependent")]
    DegenerateBasis,
    #[error("subspace is degenerate (contains a light-like direction)")]
    DegenerateSubspace,
    #[error("wrong object kind: {0}")]
    WrongKind(String),
    #[error("planes are not ultra-parallel")]
    NotUltraParallel,
    #[error("planes are equal")]
    EqualPlanes,
    #[error("planes do not meet in a single point")]
    NotSinglePoint,
    #[error("planes are orthogonal; the invariant pair is not unique")]
    OrthogonalPlanes,
    #[error("matrix is not in SO+(4,1): {0}")]
    NotInGroup(String),
    #[error("isometry has the wrong class: {0}")]
    WrongClass(String),
    #[error("isometry is an involution; the factor pair is not unique")]
    IsInvolution,
    #[error("matrix is not a rotation")]
    NotOrthogonal,
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bad rotation angle: {0}")]
    BadAngle(String),
    #[error("vector is not time-like")]
    NotTimeLike,
    #[error("object kind does not match the pencil: {0}")]
    KindMismatch(String),
    #[error("element through the point is not unique")]
    NotUnique,
    #[error("plane is not in the half-turn bank")]
    NotInBank,
    #[error("trivial input: {0}")]
    TrivialInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::DegenerateBasis => "DegenerateBasis",
            Error::DegenerateSubspace => "DegenerateSubspace",
            Error::WrongKind(_) => "WrongKind",
            Error::NotUltraParallel => "NotUltraParallel",
            Error::EqualPlanes => "EqualPlanes",
            Error::NotSinglePoint => "NotSinglePoint",
            Error::OrthogonalPlanes => "OrthogonalPlanes",
            Error::NotInGroup(_) => "NotInGroup",
            Error::WrongClass(_) => "WrongClass",
            Error::IsInvolution => "IsInvolution",
            Error::NotOrthogonal => "NotOrthogonal",
            Error::NonPositiveScale => "NonPositiveScale",
            Error::BadParams(_) => "BadParams",
            Error::BadAngle(_) => "BadAngle",
            Error::NotTimeLike => "NotTimeLike",
            Error::KindMismatch(_) => "KindMismatch",
            Error::NotUnique => "NotUnique",
            Error::NotInBank => "NotInBank",
            Error::TrivialInput(_) => "TrivialInput",
        }
    }
}

use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("unsupported algebra type: {0}")]
    UnsupportedType(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight has {got} labels, algebra has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not regular dominant")]
    NotRegularDominant(String),
    #[error("dominant normalization exceeded {0} steps; weight is outside the Tits cone")]
    NotInTitsCone(usize),
    #[error("stabilizer of {0} is infinite")]
    InfiniteStabilizer(String),
    #[error("height {needed} exceeds the truncation bound {bound}")]
    HeightBoundExceeded { needed: i64, bound: usize },
    #[error("series is not invertible: leading coefficient {0} is not a unit")]
    NotInvertible(String),
    #[error("anchor is not compatible with the root lattice")]
    AnchorNotLatticeCompatible,
    #[error("zero denominator in Freudenthal recursion at offset {0}")]
    ZeroDenominator(String),
    #[error("non-integral value in exact computation: {0}")]
    NonIntegral(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("Weyl group ball exceeds {0} elements")]
    BallTooLarge(usize),
    #[error("operation requires an algebra of {0} type")]
    WrongKind(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

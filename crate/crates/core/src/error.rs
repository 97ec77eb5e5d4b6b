use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected} indeterminates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot expand at z = infinity: {0}")]
    NotExpandable(String),
    #[error("series live over different Novikov gradings")]
    GradingMismatch,
    #[error("constant term must be 1, found {0}")]
    ConstantTermNotOne(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("weight matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("no stable fixed point: theta is not a positive combination of any complementary basis")]
    NoStableFixedPoint,
    #[error("non-unimodular data at {0}")]
    NonUnimodular(String),
    #[error("effective cone unknown: no generators available and degree bound > 0")]
    EffectiveConeUnknown,
    #[error("class {0} is not effective")]
    NotEffective(String),
    #[error("not semi-positive: {0}")]
    NotSemiPositive(String),
    #[error("unstable moduli: {0}")]
    Unstable(String),
    #[error("non-isolated orbit: {0}")]
    NonIsolatedOrbit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("discriminant {0} of the quadratic order is not negative")]
    BadDiscriminant(BigInt),
    #[error("ring action is not well defined: {0}")]
    BadAction(String),
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("{0} is infinite; the search space cannot be enumerated")]
    InfiniteSearch(String),
    #[error("enumeration of {size} items exceeds the limit {limit}")]
    EnumerationLimit { size: BigInt, limit: u64 },
    #[error("division by the zero ideal is only defined through the zero filter")]
    ZeroDivisor,
    #[error("filter {0} has no finite stabilization stage")]
    NoFiniteStage(String),
    #[error("filter {0} is not supported here")]
    UnsupportedFilter(String),
    #[error("map is not injective")]
    NotInjective,
    #[error("map is not a J-map")]
    NotJMap,
    #[error("map is not pure; the pushout need not exist")]
    NotPure,
    #[error("pointing is not an injective homomorphism: {0}")]
    NonInjectivePointing(String),
    #[error("map does not respect the pointings: {0}")]
    IncompatiblePointing(String),
    #[error("invalid torsion target: {0}")]
    InvalidTarget(String),
    #[error("extension is not normal at level {level}")]
    NotNormal { level: BigInt },
    #[error("truncation level {given} is too small; minimal sufficient level is {required}")]
    LevelTooSmall { given: BigInt, required: BigInt },
    #[error("hypothesis ({condition}) fails: {detail}")]
    HypothesisFailure { condition: u8, detail: String },
    #[error("lattice has {0} members, above the enumeration cap")]
    LatticeTooLarge(usize),
    #[error("empty family of homomorphisms")]
    EmptyFamily,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for answers where the mathematics refuses the request (as opposed
    /// to malformed input).
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotPure
                | Error::NotNormal { .. }
                | Error::LevelTooSmall { .. }
                | Error::HypothesisFailure { .. }
                | Error::InfiniteSearch(_)
                | Error::EnumerationLimit { .. }
                | Error::LatticeTooLarge(_)
                | Error::NoFiniteStage(_)
                | Error::NotJMap
                | Error::NotInjective
        )
    }
}

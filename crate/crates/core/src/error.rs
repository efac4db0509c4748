use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no binding for symbol `{0}`")]
    MissingBinding(String),
    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("exponential needs a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("word of length {len} exceeds the rewriting cap of {cap}")]
    LengthCap { len: usize, cap: usize },
    #[error("{letters} letters exceed the contraction enumeration cap of {cap}")]
    SizeCap { letters: usize, cap: usize },
    #[error("operation needs normal (+1) or anti-normal (-1) ordering, got {0}")]
    UnsupportedOrdering(String),
    #[error("ordering parameter {0} lies outside [-1, 1]")]
    OrderingOutOfRange(String),
    #[error("ordered polynomials carry different orderings ({left} vs {right})")]
    OrderingMismatch { left: String, right: String },
    #[error("block sequence is empty")]
    EmptySequence,
    #[error("constant term blocks cancellation of the number operator")]
    ConstantTermObstruction,
    #[error("term ad^{dag} a^{ann} is not divisible by the number operator")]
    NotDivisible { dag: u32, ann: u32 },
}

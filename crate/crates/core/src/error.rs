use thiserror::Error;

use crate::count::BigCount;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("string length {n} exceeds the enumerable limit of 63 bits")]
    AboveEnumerableLimit { n: usize },
    #[error("index {index} is not below 2^{n}")]
    IndexOutOfRange { n: usize, index: BigCount },
    #[error("run length {i} outside 1..={n}")]
    RunLengthOutOfRange { i: u64, n: u64 },
    #[error("string length must be at least {min}, got {n}")]
    LengthTooSmall { n: u64, min: u64 },
    #[error("position {k} outside 1..={n}")]
    PositionOutOfRange { k: u64, n: u64 },
    #[error("unrolling depth {k} outside 0..{limit}")]
    DepthOutOfRange { k: u64, limit: u64 },
    #[error("binomial ({a} choose {b}) is outside the supported region a, b >= -1")]
    BinomialDomain { a: i64, b: i64 },
    #[error("{what} = {value} exceeds the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("spectrum has a run of length {longest} but strings have length {n}")]
    SpectrumTooLong { n: u64, longest: u64 },
    #[error("composition parts must be positive")]
    EmptyPart,
    #[error("placement base totals {base} plus run length {i} does not equal {n}")]
    TotalMismatch { base: u64, i: u64, n: u64 },
    #[error("slot {slot} outside 0..={parts}")]
    SlotOutOfRange { slot: usize, parts: usize },
    #[error("sequence index must be nonnegative, got {0}")]
    NegativeIndex(i64),
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
    #[error("at least one sample is required")]
    NoSamples,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

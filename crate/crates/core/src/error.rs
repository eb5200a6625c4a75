use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("value {value} out of range for GF({q})")]
    ValueOutOfRange { value: u32, q: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension too large: {combinations} combinations exceed limit {limit}")]
    DimensionTooLarge { combinations: String, limit: u64 },

    #[error("malformed alist: {0}")]
    MalformedAlist(String),
    #[error("malformed graph json: {0}")]
    MalformedJson(String),
    #[error(
        "non-unity edge weight unsupported (variable {variable}, check {check}, value {value})"
    )]
    NonUnityEdgeWeight {
        variable: usize,
        check: usize,
        value: u64,
    },
    #[error("parallel edge between variable {variable} and check {check}")]
    ParallelEdge { variable: usize, check: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid tree bound arguments d={d}, g={g}: {reason}")]
    InvalidTreeBound {
        d: usize,
        g: usize,
        reason: &'static str,
    },
    #[error("graph has infinite girth")]
    InfiniteGirth,
    #[error("code has no nonzero codeword")]
    TrivialCode,
    #[error("empty sample stream")]
    EmptySamples,

    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("too many covers: {count} exceed limit {limit}")]
    TooManyCovers { count: String, limit: u64 },
    #[error("vector is not a codeword of the lifted graph")]
    NotCoverCodeword,

    #[error("invalid pseudocodeword: {0}")]
    InvalidPseudocodeword(String),
    #[error("pseudocodeword is all-zero")]
    ZeroPseudocodeword,
    #[error("constellation has {found} points, expected {expected}")]
    ConstellationSize { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

use thiserror::Error;

/// Errors raised while building rings, fields and polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("unrecognized field descriptor `{0}` (expected `q` or `fp:P`)")]
    BadField(String),
    #[error("coefficient with denominator {0} is not invertible in the field")]
    CoefficientNotInvertible(String),
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("the zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("element is not multihomogeneous: {0}")]
    NotHomogeneous(String),
}

/// Errors raised by the computational pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the unit ideal has no associated primes")]
    UnitIdeal,
    #[error("resolution is not minimal")]
    NonMinimal,
    #[error("module is not given by monomial data")]
    NonMonomial,
    #[error("degree box too small: nonzero Tor at boundary degree {0:?}")]
    BoxTooSmall(Vec<i64>),
    #[error("sequence is improper: (f_1..f_s)M = M")]
    ImproperSequence,
    #[error("sequence is not filter-regular (fails at element {index})")]
    NotFilterRegular { index: usize },
    #[error("block variables not filter-regular after generic changes with seeds {seeds:?}")]
    FilterRegularityFailed { seeds: Vec<u64> },
    #[error("prime field {0} too small for a generic coordinate change")]
    FieldTooSmall(u32),
    #[error("sequence of length {len} too short for window {window}")]
    SequenceTooShort { len: usize, window: usize },
    #[error("block index {0} out of range")]
    BadBlock(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = ComputeError> = std::result::Result<T, E>;

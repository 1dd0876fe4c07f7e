//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by field construction, code validation, channel sampling
/// and the decoder pipeline. Decoding *failures* are not errors; they are
/// reported through [`crate::decoder::DecodeOutcome`].
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field order must be a prime power, got q = {q}")]
    NotPrimePower { q: u64 },

    #[error("field too large: q^m = {q}^{m} does not fit in 64-bit integer encoding")]
    FieldTooLarge { q: u64, m: usize },

    #[error("prime-power base field too large for table arithmetic: q = {q} > {limit}")]
    BaseFieldTooLarge { q: u64, limit: u64 },

    #[error("modulus must be monic of degree m = {m}, got {got} coefficients")]
    BadModulusShape { m: usize, got: usize },

    #[error("modulus is reducible over F_{q}")]
    ReducibleModulus { q: u64 },

    #[error("element {code} is not primitive: its order does not equal q^m - 1")]
    NotPrimitive { code: u64 },

    #[error("coefficient {value} out of range for F_{q}")]
    CoefficientOutOfRange { value: u64, q: u64 },

    #[error("element encoding {code} out of range for a field of order {order}")]
    ElementOutOfRange { code: u64, order: u64 },

    #[error("inversion of zero")]
    DivisionByZero,

    #[error("not enough conjugacy classes: requested {requested}, field has q - 1 = {available}")]
    NotEnoughConjugacyClasses { requested: usize, available: u64 },

    #[error("block count must be positive")]
    EmptyBlockCount,

    #[error("block count {ell} does not divide folded length {n_folded}")]
    BlockCountMustDivideLength { ell: usize, n_folded: usize },

    #[error("folding parameter {h} does not divide unfolded block length {block_len}")]
    FoldingMustDivideBlockLength { h: usize, block_len: usize },

    #[error("block exceeds extension degree: n_i = {block_len} > m = {m}")]
    BlockExceedsExtensionDegree { block_len: usize, m: usize },

    #[error("dimension out of range: k = {k} must satisfy 1 <= k <= n = {n}")]
    DimensionOutOfRange { k: usize, n: usize },

    #[error("shape mismatch: {context}")]
    ShapeMismatch { context: String },

    #[error("message degree {degree} not below dimension k = {k}")]
    MessageDegreeTooLarge { degree: usize, k: usize },

    #[error("infeasible sum-rank error weight t = {t}: maximum is {max}")]
    InfeasibleErrorWeight { t: usize, max: usize },

    #[error("invalid decoder configuration: {context}")]
    InvalidDecoderConfig { context: String },

    #[error("internal invariant violated: {context}")]
    Internal { context: String },
}

pub type Result<T> = std::result::Result<T, Error>;

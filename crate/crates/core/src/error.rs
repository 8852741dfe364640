//! Error types shared across the kernel, product, Bailey, and catalog layers.

use crate::series::HalfExp;

/// Errors produced by series arithmetic and identity verification.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The lowest q-coefficient of a series is not a single term `±z^e`,
    /// so the series is not invertible in the working ring.
    #[error("series is not a unit: lowest q-coefficient (at q^{exp}) is `{found}`, need ±z^e")]
    NotAUnit { exp: HalfExp, found: String },

    /// A term handed to `QSeries::make` lies above the requested truncation order.
    #[error("term exponent q^{exp} exceeds truncation order q^{order}")]
    ExponentAboveTruncation { exp: HalfExp, order: HalfExp },

    /// A comparison was requested beyond what either side knows exactly.
    #[error("comparison up to q^{requested} exceeds a truncation order of q^{available}")]
    InsufficientOrder {
        requested: HalfExp,
        available: HalfExp,
    },

    /// Bailey transform inputs carry different relative parameters.
    #[error("relative parameters differ: `{left}` vs `{right}`")]
    RelMismatch { left: String, right: String },

    /// A Pochhammer specification violates its invariants.
    #[error("invalid Pochhammer specification: {0}")]
    InvalidPochSpec(String),

    /// A precondition on monomial parameters (q-order bounds) was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Identity id not present in the catalog.
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    /// Series id not recognized by the coefficient-dump interface.
    #[error("unknown series id `{0}`")]
    UnknownSeries(String),

    /// A family identity was verified without supplying its parameter k.
    #[error("identity `{0}` is a family and requires the parameter k (k >= 2)")]
    MissingK(String),

    /// The family parameter is out of range.
    #[error("family parameter k must be >= 2, got {0}")]
    InvalidK(u32),

    /// Self-audit found a double-sum term below the order past the certified bound.
    #[error(
        "double-sum bound violated in `{spec}`: term at (n, j) = ({n}, {j}) \
         has exponent q^{exp} <= order q^{order} beyond n_max = {n_max}"
    )]
    BoundViolation {
        spec: String,
        n: i64,
        j: i64,
        exp: HalfExp,
        order: HalfExp,
        n_max: i64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

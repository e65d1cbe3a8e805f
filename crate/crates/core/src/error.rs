use thiserror::Error;

/// Failures reported by the sequence, recurrence and spectral routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("order {m} exceeds the configured cap {cap}")]
    OrderTooLarge { m: u32, cap: u32 },

    #[error("order {m} is below the minimum {min} for this operation")]
    OrderTooSmall { m: u32, min: u32 },

    #[error("shift {k} is even; only odd shifts fall strictly inside an interval")]
    EvenShift { k: u64 },

    #[error("shift {k} is outside 1..=2^{m}-1")]
    ShiftOutOfRange { k: u64, m: u32 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("degenerate point set: {0}")]
    Degenerate(&'static str),

    #[error("search depth {depth} exceeds the cap {cap}")]
    DepthTooLarge { depth: usize, cap: usize },

    #[error("{points} quadrature points given, at least {required} required")]
    InsufficientQuadrature { points: usize, required: usize },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(&'static str),

    #[error("regrouping produced the factor {0}, which is neither MA nor MB")]
    NormalFormBroken(String),

    #[error("integer overflow in exact matrix product")]
    Overflow,

    #[error("candidate product has zero spectral radius")]
    ZeroSpectralRadius,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

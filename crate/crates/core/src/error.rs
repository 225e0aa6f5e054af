use thiserror::Error;

/// Errors raised by the series kernels and the invariant calculators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has no nonzero coefficient below its truncation order {trunc}")]
    ZeroLeadingCoefficient { trunc: i64 },
    #[error("exponential requires a series without constant term (found a nonzero coefficient at q^{exponent})")]
    NonzeroConstantTerm { exponent: i64 },
    #[error("bivariate series has a non-invertible leading coefficient")]
    NonInvertibleLeading,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("({p}, {q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("q^{p} coefficient of the KKV product is not expressible in the s-basis")]
    BasisChangeResidual { p: usize },
    #[error("truncation order {trunc} is too small; need at least {needed}")]
    InsufficientTruncation { trunc: i64, needed: i64 },
    #[error("extraction at d2 = 0 divides by zero")]
    DivisionByZeroDegree,
}

pub type Result<T> = std::result::Result<T, Error>;

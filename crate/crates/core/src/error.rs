use thiserror::Error;

/// Errors raised by the exact core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no squarefree part")]
    ZeroPolynomial,

    #[error("constant polynomial")]
    ConstantPolynomial,

    #[error("leading coefficient must be positive")]
    NonPositiveLeading,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("outer exponent must be at least 1")]
    ZeroExponent,

    #[error("polynomial coefficients too large for the threshold scan (bound {0})")]
    ThresholdScanTooLarge(String),

    #[error("pair outside threshold domain")]
    PairOutsideDomain,

    #[error("blocker abscissa must be smaller")]
    BlockerNotSmaller,

    #[error("threshold exceeds range")]
    ThresholdExceedsRange,

    #[error("require s > r")]
    RequireSGreaterR,

    #[error("s and r must be coprime")]
    NotCoprime,

    #[error("curve probe requires deg(f) >= 2")]
    DegreeTooSmall,

    #[error("inconclusive at requested precision")]
    Inconclusive,

    #[error("divergent")]
    Divergent,

    #[error("tolerance {0} is below what double precision can certify")]
    ToleranceTooSmall(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

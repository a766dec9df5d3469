use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("matrices carry different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),

    /// A product left a stray factor of sqrt(p): the operands are not in the
    /// group generated by the integral paramodular group and the Fricke element.
    #[error("scaled product is not reducible to the form M or M/sqrt(p)")]
    ScaleOverflow,

    #[error("matrix does not preserve the requested symplectic form")]
    NotSymplectic,

    #[error("matrix is not integral")]
    NonIntegral,

    #[error("matrix is not conjugate to an integral (1/sqrt(p))-scaled matrix")]
    NotConjugatable,

    #[error("element and group use different charts or primes")]
    ChartMismatch,

    #[error("generator {index} is not an element of the paramodular group")]
    GeneratorInvalid { index: usize },

    #[error("matrix is not an element of Sp(4, F2)")]
    NotInGroup,

    #[error("matrix is not an element of the Fricke-extended group")]
    NotInGammaStar,

    #[error("uniqueness audit failed at step {step}: {detail}")]
    AuditFailed { step: char, detail: String },

    #[error("r-exponent {exponent} exceeds the window cap {cap}")]
    WindowOverflow { exponent: i64, cap: i64 },

    #[error("f-table holds n <= {have} but the product needs n = {need}")]
    FTableTooSmall { need: i64, have: i64 },

    #[error("truncation cap {cap} is above the supported maximum {max}")]
    CapTooLarge { cap: i64, max: i64 },

    #[error("tail estimate {tail:.3e} exceeds tolerance {tolerance:.3e}")]
    PrecisionLoss { tail: f64, tolerance: f64 },

    #[error("det(C tau + D) vanishes to working precision")]
    SingularDenominator,

    #[error("point is not in the Siegel upper half-space")]
    NotInUpperHalfSpace,

    #[error("slash ratio varies by {spread:.3e} across sample points (tolerance {tolerance:.3e})")]
    ConstancyFailure { spread: f64, tolerance: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

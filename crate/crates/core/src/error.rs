use thiserror::Error;

/// Errors raised by the exact-geometry kernel and the two surface pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("the zero vector has no primitive representative")]
    ZeroVector,

    #[error("operation undefined for the zero polynomial: {0}")]
    ZeroPolynomial(String),

    #[error("negative exponent in {0}; clear denominators by a monomial first")]
    NegativeExponent(String),

    #[error("inputs share a common factor: {0}")]
    CommonFactor(String),

    #[error("both inputs are constant in the elimination variable")]
    ConstantResultant,

    #[error("intersection in the torus is not zero-dimensional: {0}")]
    PositiveDimensionalIntersection(String),

    #[error("exhausted coordinate-change retries while computing {0}")]
    RetriesExhausted(String),

    #[error("non-integral weight on edge {edge}: {value}")]
    NonIntegralWeight { edge: String, value: String },

    #[error("genericity certificate rejected the input ({0} violation(s)); pass force to build anyway")]
    CertificateRejected(usize),

    #[error("a common point of three or more boundary divisors appears to be irrational; offending factor: {0}")]
    IrrationalExcessPoint(String),

    #[error("blow-up step limit of {0} exceeded")]
    StepLimitExceeded(usize),

    #[error("point {0} is not expressible in the current charts")]
    PointNotInCharts(String),

    #[error("image cones do not form a fan and dimension {0} refinement is unsupported")]
    NotRefinable(usize),

    #[error("positive-weight edge between parallel points {0} and {1} spans no 2-cone")]
    ParallelEdge(String, String),

    #[error("unknown serialization format: {0}")]
    UnknownFormat(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("factor product does not recover the declared polynomial")]
    FactorMismatch,

    #[error("unit (monomial) factor is not a valid split")]
    UnitFactor,
}

pub type Result<T> = std::result::Result<T, Error>;

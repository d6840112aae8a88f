use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision of {0} bits is below the minimum of 128")]
    InvalidPrecision(u32),

    #[error("zero tolerance must lie strictly between 0 and 1")]
    InvalidTolerance,

    #[error("series centers differ")]
    CenterMismatch,

    #[error("leading coefficient of the base series must be 1")]
    LeadingCoefficient,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("branch point {0} coincides with the expansion center")]
    BranchPointAtCenter(String),

    #[error("exponent sum {0} does not give a single-valued germ at infinity")]
    ExponentSum(String),

    #[error("series too short: need coefficients through power {needed}, have through {available}")]
    InsufficientLength { needed: i64, available: i64 },

    #[error("non-generic input: numerical rank {rank} leaves {free} free columns")]
    NonGeneric { rank: usize, free: usize },

    #[error("kernel residual {residual} exceeds tolerance {tolerance}")]
    ResidualTooLarge { residual: String, tolerance: String },

    #[error("precision exhausted at {bits} bits: residual {residual}")]
    PrecisionExhausted { bits: u32, residual: String },

    #[error("root iteration did not converge in {iterations} sweeps (worst residual {worst})")]
    NoConvergence { iterations: usize, worst: String },

    #[error("polynomial has no roots to find (degree 0 or zero polynomial)")]
    DegreeTooLow,

    #[error("probe point lies on a pole of the approximant")]
    ProbeOnPole,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },
    #[error("carrier {0} is not absorptive and fully continuous")]
    NotAbsorptive(String),
    #[error("assignment violates duality: h({token}) * h(~{token}) != 0")]
    DualityViolated { token: String },
    #[error("token {0} has no assigned value")]
    UnassignedToken(String),
    #[error("invalid value {text:?} for carrier {carrier}: {reason}")]
    InvalidValue { carrier: String, text: String, reason: String },
    #[error("unknown carrier {0:?}")]
    UnknownCarrier(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown relation {0}")]
    UnknownRelation(String),
    #[error("relation {relation} has arity {expected}, used with {found} arguments")]
    ArityMismatch { relation: String, expected: usize, found: usize },
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("fixed-point variable {relation} occurs negatively at {path}")]
    NotPositive { relation: String, path: String },
    #[error("interpretation is not model-defining: {0}")]
    NotModelDefining(String),
    #[error("interpretation is not model-compatible: {0}")]
    NotModelCompatible(String),
    #[error("{open} undetermined atoms exceed the cap of {cap}")]
    TooManyModels { open: usize, cap: usize },
    #[error("greatest fixed points are not supported in carrier {0}")]
    GfpUnsupportedCarrier(String),
    #[error("fixed-point iteration did not stabilize within {steps} steps")]
    IterationDiverged { steps: usize },
    #[error("widened gfp iteration not verified up to threshold {bmax}")]
    WideningDiverged { bmax: u32 },
    #[error("{count} positional strategies exceed the cap of {cap}")]
    StrategySpaceTooLarge { count: u128, cap: u128 },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("unsupported fixed-point nesting: {0}")]
    UnsupportedNesting(String),
    #[error("problem file error at {pointer}: {message}")]
    Problem { pointer: String, message: String },
}

impl Error {
    /// True for the failures caused by an iteration budget rather than bad input.
    pub fn is_divergence(&self) -> bool {
        matches!(self, Error::IterationDiverged { .. } | Error::WideningDiverged { .. })
    }
}

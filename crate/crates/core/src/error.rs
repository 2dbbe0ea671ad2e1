use thiserror::Error;

use crate::geometry::Side;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A height falls on a stripe boundary, where the k-value is ambiguous.
    #[error("height {alpha} lies on a stripe boundary (shift {shift})")]
    Boundary { alpha: f64, shift: f64 },

    #[error("setting {theta} rad has no face on this tube")]
    UnsupportedSetting { theta: f64 },

    /// The oval ball was already pushed against a face.
    #[error("oval ball already measured; measurement is irreversible")]
    Consumed,

    #[error("exact evaluation is not available for model `{0}`")]
    ModeUnavailable(String),

    #[error("P and P' disagree at {theta} rad: P + P' = {sum}")]
    Consistency { theta: f64, sum: f64 },

    #[error("exact grid weights sum to {0}, expected 1")]
    GridWeights(String),

    #[error("unknown pair id {0}")]
    UnknownPair(u64),

    /// A second direct measurement on one particle of a pair.
    #[error("any-all violation: particle {side} of pair {pair} was already measured")]
    AnyAll { pair: u64, side: Side },

    #[error("pair {pair} already holds {held} values; the budget is 2")]
    ValueBudget { pair: u64, held: usize },

    #[error("inference is disabled on this ledger")]
    InferenceDisabled,

    #[error("particle {side} of pair {pair} has no direct measurement along {theta} rad")]
    NoMatchingMeasurement { pair: u64, side: Side, theta: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

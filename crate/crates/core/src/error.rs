use thiserror::Error;

/// Errors raised by the contest solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContestError {
    #[error("effort must be finite and nonnegative, got {0}")]
    NegativeEffort(f64),

    #[error("prize valuation must be finite and positive, got {0}")]
    InvalidValuation(f64),

    #[error("impact function requires a > 0 and 0 < r <= 1, got a = {a}, r = {r}")]
    InvalidImpact { r: f64, a: f64 },

    #[error("choice set is empty")]
    EmptyChoiceSet,

    #[error("segment [{lo}, {hi}] is invalid: endpoints must be finite with 0 <= lo <= hi")]
    InvalidSegment { lo: f64, hi: f64 },

    #[error("segments [{a_lo}, {a_hi}] and [{b_lo}, {b_hi}] overlap or touch")]
    OverlappingSegments { a_lo: f64, a_hi: f64, b_lo: f64, b_hi: f64 },

    #[error("upper bracket element {e_high} lies below the unconstrained equilibrium {e_star}")]
    BelowUnconstrained { e_high: f64, e_star: f64 },

    #[error("restricted game needs e_low < e_high, got {e_low} and {e_high}")]
    InvalidBracket { e_low: f64, e_high: f64 },

    #[error("valuations differ ({v1} vs {v2}); use the finite-game analysis for asymmetric contests")]
    AsymmetricValuations { v1: f64, v2: f64 },

    #[error("symmetric analysis needs a shared choice set, not per-player effort lists")]
    NoSharedChoiceSet,

    #[error("grid step must be finite and positive, got {0}")]
    InvalidStep(f64),

    #[error("effort list for player {0} is empty")]
    EmptyEfforts(usize),

    #[error("choice set contains the continuum [{lo}, {hi}]; pass a grid step to discretize it")]
    ContinuousChoiceSet { lo: f64, hi: f64 },

    #[error("cell ({row}, {col}) is outside a {rows}x{cols} game")]
    InvalidCell {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("bisection needs a sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, ContestError>;

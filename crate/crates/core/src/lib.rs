//! Nash equilibria of two-player contests with a logit contest success
//! function when efforts are restricted to a constrained choice set.
//!
//! - [`payoff`]: win probabilities, expected payoffs and the payoff identity
//!   for symmetric players.
//! - [`symmetric`]: the unconstrained equilibrium, the bracket around it,
//!   the threshold effort and the pure-equilibrium classification.
//! - [`finite_game`]: payoff bimatrices for finite, possibly asymmetric
//!   contests with pure, dominance, small-support mixed and best-response
//!   analyses.
//! - [`oracle`]: brute-force grid verification of any of the above.

pub mod choice_set;
pub mod config;
pub mod error;
pub mod finite_game;
pub mod oracle;
pub mod payoff;
pub mod root;
pub mod symmetric;

pub use choice_set::{ChoiceSet, Segment};
pub use config::{ContestSpec, ParsedConfig, RunConfig, Strategies, Tolerances};
pub use error::{ContestError, Result};
pub use payoff::{
    eval_impact, expected_payoff, identity_tolerance, payoff_identity_residual, win_probability, EffortPair,
    ImpactFamily, ImpactFunction, Valuation,
};
pub use symmetric::{
    bracket, classify, dominant_strategy_2x2, threshold_effort, unconstrained_equilibrium, Bracket, DominantStrategy,
    EquilibriumCase, EquilibriumReport, Placement,
};

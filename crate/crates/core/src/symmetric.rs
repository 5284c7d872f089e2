//! Pure-strategy equilibria of symmetric contests over a constrained
//! choice set.
//!
//! With a common valuation `v` and concave impact, the unconstrained game has
//! a unique symmetric equilibrium `e*`. Over a closed choice set `S`, every
//! pure equilibrium uses only the two feasible efforts nearest to `e*`: the
//! bracket `(e_low, e_high)`. Which of them is played is decided by the
//! threshold effort `ê`, at which a player is indifferent between `ê` and
//! `e_high` whether the rival plays one or the other.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choice_set::ChoiceSet;
use crate::config::{ContestSpec, Tolerances};
use crate::error::{ContestError, Result};
use crate::payoff::{check_effort, payoff_difference, win_probability, ImpactFunction, Valuation};
use crate::root::{bisect, ROOT_TOLERANCE};

/// Feasible efforts on either side of `e*` with nothing feasible strictly
/// between them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub e_low: f64,
    pub e_high: f64,
    /// `e*` itself is feasible; then `e_low == e_high == e*`.
    pub interior: bool,
}

/// Where the choice set sits relative to `e*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Placement {
    Bracketed(Bracket),
    /// Every feasible effort is below `e*`.
    AllBelow {
        max: f64,
    },
    /// Every feasible effort is above `e*`.
    AllAbove {
        min: f64,
    },
}

impl Placement {
    pub fn bracket(&self) -> Option<Bracket> {
        match self {
            Placement::Bracketed(b) => Some(*b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquilibriumCase {
    /// `e*` is feasible and played by both.
    Interior,
    /// Both play `e_low`: `e_high > v/2` or `ê < e_low`.
    CaseA,
    /// Both play `e_high`: `ê > e_low`.
    CaseB,
    /// Knife edge `ê = e_low`: every profile over the bracket pair.
    CaseC,
    /// Whole set below `e*`; both play `max S`.
    OneSidedLow,
    /// Whole set above `e*`; both play `min S`.
    OneSidedHigh,
}

impl EquilibriumCase {
    pub fn label(self) -> &'static str {
        match self {
            EquilibriumCase::Interior => "Interior",
            EquilibriumCase::CaseA => "CaseA",
            EquilibriumCase::CaseB => "CaseB",
            EquilibriumCase::CaseC => "CaseC",
            EquilibriumCase::OneSidedLow => "OneSidedLow",
            EquilibriumCase::OneSidedHigh => "OneSidedHigh",
        }
    }
}

/// Dominant strategy of the 2×2 game restricted to the bracket pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DominantStrategy {
    Strict {
        effort: f64,
    },
    Weak {
        effort: f64,
    },
    /// Both efforts pay the same against either rival effort.
    Indifferent,
}

impl DominantStrategy {
    pub fn effort(&self) -> Option<f64> {
        match self {
            DominantStrategy::Strict { effort } | DominantStrategy::Weak { effort } => Some(*effort),
            DominantStrategy::Indifferent => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub valuation: f64,
    pub e_star: f64,
    pub placement: Placement,
    pub threshold: Option<f64>,
    pub case: EquilibriumCase,
    /// `(player 1 effort, player 2 effort)`.
    pub equilibria: Vec<(f64, f64)>,
    pub dominant_strategy_2x2: Option<DominantStrategy>,
    /// Largest total equilibrium effort divided by `v`.
    pub rent_dissipation: f64,
    pub diagnostics: Vec<String>,
}

/// Symmetric equilibrium effort `e*` of the unconstrained contest.
pub fn unconstrained_equilibrium(v: Valuation, f: &ImpactFunction) -> f64 {
    f.symmetric_foc_root(v)
}

/// `e*` as the root of `v · f'(e) − 4 f(e)` found by bisection on `[0, v]`.
pub fn unconstrained_equilibrium_numeric(v: Valuation, f: &ImpactFunction, tol: f64) -> Result<f64> {
    let foc = |e: f64| {
        let slope = f.derivative(e).unwrap_or(f64::INFINITY);
        v.get() * slope - 4.0 * f.eval_unchecked(e)
    };
    bisect(foc, 0.0, v.get(), tol)
}

pub fn bracket(set: &ChoiceSet, e_star: f64) -> Placement {
    if set.contains(e_star) {
        return Placement::Bracketed(Bracket {
            e_low: e_star,
            e_high: e_star,
            interior: true,
        });
    }
    match (set.floor(e_star), set.ceil(e_star)) {
        (Some(e_low), Some(e_high)) => Placement::Bracketed(Bracket {
            e_low,
            e_high,
            interior: false,
        }),
        (Some(max), None) => Placement::AllBelow { max },
        (None, Some(min)) => Placement::AllAbove { min },
        (None, None) => unreachable!("choice sets are nonempty"),
    }
}

/// Threshold `ê ∈ [0, e*]` solving `v/2 − ê = p(e_high, ê) · v − e_high`.
///
/// `None` when `e_high > v/2`.
pub fn threshold_effort(v: Valuation, f: &ImpactFunction, e_high: f64) -> Result<Option<f64>> {
    threshold_effort_with(v, f, e_high, ROOT_TOLERANCE)
}

pub fn threshold_effort_with(v: Valuation, f: &ImpactFunction, e_high: f64, tol: f64) -> Result<Option<f64>> {
    check_effort(e_high)?;
    let e_star = unconstrained_equilibrium(v, f);
    let half = 0.5 * v.get();
    if e_high < e_star {
        return Err(ContestError::BelowUnconstrained { e_high, e_star });
    }
    if e_high > half {
        return Ok(None);
    }
    if e_high == half {
        return Ok(Some(0.0));
    }
    if e_high == e_star {
        return Ok(Some(e_star));
    }
    let residual = |e: f64| {
        let p = win_probability(f, e_high, e).expect("efforts are nonnegative");
        (half - e) - (p * v.get() - e_high)
    };
    bisect(residual, 0.0, e_star, tol).map(Some)
}

/// Dominant strategy of the game restricted to `{e_low, e_high}`.
///
/// The payoff gain of `e_low` over `e_high` is the same against either rival
/// effort, so one of them always (weakly) dominates.
pub fn dominant_strategy_2x2(v: Valuation, f: &ImpactFunction, e_low: f64, e_high: f64) -> Result<DominantStrategy> {
    dominant_strategy_2x2_with(v, f, e_low, e_high, Tolerances::default().tie)
}

pub fn dominant_strategy_2x2_with(
    v: Valuation,
    f: &ImpactFunction,
    e_low: f64,
    e_high: f64,
    tie: f64,
) -> Result<DominantStrategy> {
    check_effort(e_low)?;
    check_effort(e_high)?;
    if e_low >= e_high {
        return Err(ContestError::InvalidBracket { e_low, e_high });
    }
    let gains = [
        payoff_difference(v, f, e_low, e_high, e_low),
        payoff_difference(v, f, e_low, e_high, e_high),
    ];
    let zero = |d: f64| d.abs() <= tie;
    Ok(if gains.iter().all(|&d| zero(d)) {
        DominantStrategy::Indifferent
    } else if gains.iter().all(|&d| d > tie) {
        DominantStrategy::Strict { effort: e_low }
    } else if gains.iter().all(|&d| d < -tie) {
        DominantStrategy::Strict { effort: e_high }
    } else if gains.iter().all(|&d| d >= -tie) {
        DominantStrategy::Weak { effort: e_low }
    } else if gains.iter().all(|&d| d <= tie) {
        DominantStrategy::Weak { effort: e_high }
    } else {
        // Opposite signs beyond the tie tolerance cannot happen in exact
        // arithmetic; side with the larger gain.
        let effort = if gains[0] + gains[1] >= 0.0 { e_low } else { e_high };
        DominantStrategy::Weak { effort }
    })
}

/// Case of the bracket pair `(e_low, e_high)` given its threshold.
pub fn case_for(e_low: f64, threshold: Option<f64>, knife_edge: f64) -> EquilibriumCase {
    match threshold {
        None => EquilibriumCase::CaseA,
        Some(t) if t < e_low - knife_edge => EquilibriumCase::CaseA,
        Some(t) if t > e_low + knife_edge => EquilibriumCase::CaseB,
        Some(_) => EquilibriumCase::CaseC,
    }
}

pub fn classify(spec: &ContestSpec) -> Result<EquilibriumReport> {
    classify_with(spec, &Tolerances::default())
}

pub fn classify_with(spec: &ContestSpec, tol: &Tolerances) -> Result<EquilibriumReport> {
    let (v, set) = spec.symmetric_parts()?;
    let f = &spec.impact;
    let e_star = unconstrained_equilibrium(v, f);
    let placement = bracket(set, e_star);
    let mut diagnostics = Vec::new();

    let (case, threshold, equilibria, dominant) = match placement {
        Placement::Bracketed(b) if b.interior => {
            diagnostics.push("e* is feasible: unique equilibrium at the unconstrained effort".to_string());
            (EquilibriumCase::Interior, Some(e_star), vec![(e_star, e_star)], None)
        }
        Placement::Bracketed(Bracket { e_low, e_high, .. }) => {
            let threshold = threshold_effort_with(v, f, e_high, tol.root)?;
            let case = case_for(e_low, threshold, tol.knife_edge);
            let equilibria = match case {
                EquilibriumCase::CaseA => vec![(e_low, e_low)],
                EquilibriumCase::CaseB => vec![(e_high, e_high)],
                _ => vec![(e_low, e_low), (e_low, e_high), (e_high, e_low), (e_high, e_high)],
            };
            match threshold {
                None => diagnostics.push(format!(
                    "no threshold: e_high = {e_high} exceeds v/2 = {}",
                    0.5 * v.get()
                )),
                Some(t) => diagnostics.push(format!(
                    "knife-edge margin |ê - e_low| = {:.3e}; small changes of S near e_low can switch \
                     equilibrium effort between e_low and e_high",
                    (t - e_low).abs()
                )),
            }
            let dominant = dominant_strategy_2x2_with(v, f, e_low, e_high, tol.tie)?;
            let consistent = match (case, dominant) {
                (EquilibriumCase::CaseC, d) => d.effort().is_none() || matches!(d, DominantStrategy::Weak { .. }),
                (EquilibriumCase::CaseA, d) => d.effort() == Some(e_low),
                (_, d) => d.effort() == Some(e_high),
            };
            if !consistent {
                diagnostics.push(format!(
                    "2x2 dominance {dominant:?} disagrees with {} within tolerances; instance is near the knife edge",
                    case.label()
                ));
            }
            (case, threshold, equilibria, Some(dominant))
        }
        Placement::AllBelow { max } => {
            diagnostics.push(
                "S lies entirely below e*: no upper bracket element; equilibrium at max S follows from \
                 concavity of the best response and should be confirmed by the oracle"
                    .to_string(),
            );
            (EquilibriumCase::OneSidedLow, None, vec![(max, max)], None)
        }
        Placement::AllAbove { min } => {
            diagnostics.push(
                "S lies entirely above e*: no lower bracket element; equilibrium at min S follows from \
                 concavity of the best response and should be confirmed by the oracle"
                    .to_string(),
            );
            let threshold = threshold_effort_with(v, f, min, tol.root)?;
            (EquilibriumCase::OneSidedHigh, threshold, vec![(min, min)], None)
        }
    };

    let rent_dissipation = equilibria.iter().map(|&(a, b)| (a + b) / v.get()).fold(0.0, f64::max);
    if equilibria.len() > 1 {
        let least = equilibria
            .iter()
            .map(|&(a, b)| (a + b) / v.get())
            .fold(f64::INFINITY, f64::min);
        diagnostics.push(format!(
            "rent dissipation ranges over [{least}, {rent_dissipation}] across equilibria"
        ));
    }

    Ok(EquilibriumReport {
        valuation: v.get(),
        e_star,
        placement,
        threshold,
        case,
        equilibria,
        dominant_strategy_2x2: dominant,
        rent_dissipation,
        diagnostics,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub e_high: f64,
    pub e_hat: Option<f64>,
    pub case: EquilibriumCase,
}

/// Threshold and case at a fixed `e_low` for `steps` evenly spaced values of
/// `e_high` from `from` to `to` inclusive, in order.
pub fn threshold_sweep(
    v: Valuation,
    f: &ImpactFunction,
    e_low: f64,
    from: f64,
    to: f64,
    steps: usize,
    tol: &Tolerances,
) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(ContestError::Config(format!(
            "a sweep needs at least 2 steps, got {steps}"
        )));
    }
    check_effort(e_low)?;
    check_effort(from)?;
    check_effort(to)?;
    (0..steps)
        .into_par_iter()
        .map(|k| {
            let e_high = if k == steps - 1 {
                to
            } else {
                from + (to - from) * k as f64 / (steps - 1) as f64
            };
            let e_hat = threshold_effort_with(v, f, e_high, tol.root)?;
            Ok(SweepRow {
                e_high,
                e_hat,
                case: case_for(e_low, e_hat, tol.knife_edge),
            })
        })
        .collect()
}

//! Brute-force verification on discretized choice sets.
//!
//! A grid keeps every segment endpoint exactly and fills each segment with
//! evenly spaced points no more than `h` apart. The grid game is itself a
//! finite contest, so its pure equilibria can be enumerated exhaustively and
//! compared against any analytical prediction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choice_set::ChoiceSet;
use crate::config::{ContestSpec, RunConfig, Strategies};
use crate::error::{ContestError, Result};
use crate::finite_game::{build_bimatrix, pure_nash_with, Cell};
use crate::payoff::{check_effort, ratio, ImpactFunction, Valuation};
use crate::symmetric::EquilibriumReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub points: Vec<f64>,
    pub step: f64,
}

impl Grid {
    /// A grid over an explicit list of efforts, sorted and deduplicated.
    pub fn from_points(points: &[f64], step: f64) -> Result<Self> {
        check_step(step)?;
        if points.is_empty() {
            return Err(ContestError::EmptyChoiceSet);
        }
        for &p in points {
            check_effort(p)?;
        }
        let mut points = points.to_vec();
        points.sort_by(f64::total_cmp);
        points.dedup();
        Ok(Self { points, step })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the grid point closest to `e`.
    pub fn nearest(&self, e: f64) -> usize {
        let k = self.points.partition_point(|&p| p < e);
        if k == 0 {
            0
        } else if k == self.points.len() || e - self.points[k - 1] <= self.points[k] - e {
            k - 1
        } else {
            k
        }
    }
}

fn check_step(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(ContestError::InvalidStep(h))
    }
}

pub fn discretize(set: &ChoiceSet, h: f64) -> Result<Grid> {
    check_step(h)?;
    let mut points = Vec::new();
    for s in set.segments() {
        if s.is_point() {
            points.push(s.lo);
            continue;
        }
        let n = ((s.hi - s.lo) / h - 1e-9).ceil().max(1.0) as usize;
        points.push(s.lo);
        for k in 1..n {
            points.push(s.lo + (s.hi - s.lo) * k as f64 / n as f64);
        }
        points.push(s.hi);
    }
    Ok(Grid { points, step: h })
}

/// Payoff tables of a grid game, reduced to what equilibrium checks need:
/// impact values and each player's best payoff against every rival effort.
struct GridGame<'a> {
    v1: f64,
    v2: f64,
    g1: &'a Grid,
    g2: &'a Grid,
    f1: Vec<f64>,
    f2: Vec<f64>,
    best_1: Vec<f64>,
    best_2: Vec<f64>,
}

impl<'a> GridGame<'a> {
    fn new(v1: Valuation, v2: Valuation, f: &ImpactFunction, g1: &'a Grid, g2: &'a Grid) -> Self {
        let f1: Vec<f64> = g1.points.iter().map(|&e| f.eval_unchecked(e)).collect();
        let f2: Vec<f64> = g2.points.iter().map(|&e| f.eval_unchecked(e)).collect();
        let (v1, v2) = (v1.get(), v2.get());
        let best_1 = (0..g2.len())
            .into_par_iter()
            .map(|c| {
                (0..g1.len())
                    .map(|r| ratio(f1[r], f2[c]) * v1 - g1.points[r])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        let best_2 = (0..g1.len())
            .into_par_iter()
            .map(|r| {
                (0..g2.len())
                    .map(|c| ratio(f2[c], f1[r]) * v2 - g2.points[c])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        Self {
            v1,
            v2,
            g1,
            g2,
            f1,
            f2,
            best_1,
            best_2,
        }
    }

    fn payoffs(&self, r: usize, c: usize) -> (f64, f64) {
        (
            ratio(self.f1[r], self.f2[c]) * self.v1 - self.g1.points[r],
            ratio(self.f2[c], self.f1[r]) * self.v2 - self.g2.points[c],
        )
    }

    fn is_nash(&self, r: usize, c: usize, slack: f64) -> bool {
        let (p1, p2) = self.payoffs(r, c);
        p1 >= self.best_1[c] - slack && p2 >= self.best_2[r] - slack
    }

    fn cells(&self, slack: f64) -> Vec<Cell> {
        (0..self.g1.len())
            .into_par_iter()
            .flat_map_iter(|r| {
                (0..self.g2.len())
                    .filter(move |&c| self.is_nash(r, c, slack))
                    .map(move |c| (r, c))
            })
            .collect()
    }
}

/// Every grid cell where neither player gains more than `eps` by deviating
/// to another grid effort, in row-major order.
pub fn epsilon_nash_enumerate(
    v1: Valuation,
    v2: Valuation,
    f: &ImpactFunction,
    g1: &Grid,
    g2: &Grid,
    eps: f64,
) -> Vec<Cell> {
    GridGame::new(v1, v2, f, g1, g2).cells(eps)
}

/// Best reply on the grid to a rival playing `rival` (lowest effort on ties).
pub fn grid_best_response(v: Valuation, f: &ImpactFunction, grid: &Grid, rival: f64) -> f64 {
    let fr = f.eval_unchecked(rival);
    let mut best = (grid.points[0], f64::NEG_INFINITY);
    for &e in &grid.points {
        let payoff = ratio(f.eval_unchecked(e), fr) * v.get() - e;
        if payoff > best.1 {
            best = (e, payoff);
        }
    }
    best.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleParameters {
    pub h: f64,
    pub eps: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub confirmed: bool,
    /// Predictions with no ε-Nash grid cell at their nearest grid point
    /// within `delta`.
    pub predicted_missing: Vec<(f64, f64)>,
    /// Pure equilibria of the grid game farther than `delta` from every
    /// prediction.
    pub extra_found: Vec<(f64, f64)>,
    pub parameters: OracleParameters,
}

/// Checks predicted equilibria against a grid game.
///
/// Each prediction must sit within `delta` of a grid cell that is an ε-Nash
/// profile. Conversely every pure equilibrium of the grid game (payoff ties
/// up to `tie`) must lie within `delta` of some prediction. Distances use the
/// max norm over the two efforts.
#[allow(clippy::too_many_arguments)]
pub fn verify_predictions(
    v1: Valuation,
    v2: Valuation,
    f: &ImpactFunction,
    g1: &Grid,
    g2: &Grid,
    predicted: &[(f64, f64)],
    params: OracleParameters,
    tie: f64,
) -> OracleVerdict {
    let game = GridGame::new(v1, v2, f, g1, g2);
    let dist = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs().max((a.1 - b.1).abs());

    let predicted_missing: Vec<(f64, f64)> = predicted
        .iter()
        .copied()
        .filter(|&(x, y)| {
            let (r, c) = (g1.nearest(x), g2.nearest(y));
            let on_grid = (g1.points[r], g2.points[c]);
            dist(on_grid, (x, y)) > params.delta || !game.is_nash(r, c, params.eps)
        })
        .collect();

    let tie = tie * v1.get().max(v2.get()).max(1.0);
    let extra_found: Vec<(f64, f64)> = game
        .cells(tie)
        .into_iter()
        .map(|(r, c)| (g1.points[r], g2.points[c]))
        .filter(|&cell| predicted.iter().all(|&p| dist(cell, p) > params.delta))
        .collect();

    OracleVerdict {
        confirmed: predicted_missing.is_empty() && extra_found.is_empty(),
        predicted_missing,
        extra_found,
        parameters: params,
    }
}

/// Verifies a symmetric report on `discretize(S, h)` for both players.
pub fn verify_report(report: &EquilibriumReport, spec: &ContestSpec, run: &RunConfig) -> Result<OracleVerdict> {
    let (v, set) = spec.symmetric_parts()?;
    let grid = discretize(set, run.grid_step)?;
    let params = OracleParameters {
        h: run.grid_step,
        eps: run.eps,
        delta: 2.0 * run.grid_step,
    };
    Ok(verify_predictions(
        v,
        v,
        &spec.impact,
        &grid,
        &grid,
        &report.equilibria,
        params,
        run.tolerances.tie,
    ))
}

/// Pure equilibria of a finite (possibly asymmetric) contest, checked
/// against the brute-force grid game over the same effort lists.
pub fn verify_finite(spec: &ContestSpec, run: &RunConfig) -> Result<(Vec<(f64, f64)>, OracleVerdict)> {
    let (e1, e2) = finite_lists(spec)?;
    let b = build_bimatrix(spec.valuation_1, spec.valuation_2, &spec.impact, &e1, &e2)?;
    let predicted: Vec<(f64, f64)> = pure_nash_with(&b, run.tolerances.tie)
        .into_iter()
        .map(|cell| b.cell_efforts(cell))
        .collect();
    let verdict = verify_with_lists(spec, &e1, &e2, &predicted, run)?;
    Ok((predicted, verdict))
}

/// Checks arbitrary predicted profiles on a finite spec's effort lists.
pub fn verify_with_lists(
    spec: &ContestSpec,
    efforts_1: &[f64],
    efforts_2: &[f64],
    predicted: &[(f64, f64)],
    run: &RunConfig,
) -> Result<OracleVerdict> {
    let g1 = Grid::from_points(efforts_1, run.grid_step)?;
    let g2 = Grid::from_points(efforts_2, run.grid_step)?;
    let params = OracleParameters {
        h: run.grid_step,
        eps: run.eps,
        delta: 2.0 * run.grid_step,
    };
    Ok(verify_predictions(
        spec.valuation_1,
        spec.valuation_2,
        &spec.impact,
        &g1,
        &g2,
        predicted,
        params,
        run.tolerances.tie,
    ))
}

/// Per-player effort lists of a finite spec; a shared set must be finite.
pub fn finite_lists(spec: &ContestSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    match &spec.strategies {
        Strategies::PerPlayer { efforts_1, efforts_2 } => Ok((efforts_1.clone(), efforts_2.clone())),
        Strategies::Shared(set) => {
            let pts = set.points()?;
            Ok((pts.clone(), pts))
        }
    }
}

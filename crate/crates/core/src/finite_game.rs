//! Finite contests with possibly different valuations.
//!
//! Payoff tables are indexed `[row][col]` with rows running over player 1's
//! efforts and columns over player 2's; each cell holds
//! `(player 1 payoff, player 2 payoff)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ContestError, Result};
use crate::payoff::{check_effort, expected_payoff, payoff_difference, ImpactFunction, Valuation};
use crate::root::golden_section_max;

pub const TIE_TOLERANCE: f64 = 1e-12;
pub const MIXED_TOLERANCE: f64 = 1e-10;

/// `(row, col)` index into a [`Bimatrix`].
pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bimatrix {
    pub efforts_1: Vec<f64>,
    pub efforts_2: Vec<f64>,
    pub payoff_1: Vec<Vec<f64>>,
    pub payoff_2: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Strict,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominanceRelation {
    /// 1 or 2.
    pub player: u8,
    pub dominating: f64,
    pub dominated: f64,
    pub dominating_index: usize,
    pub dominated_index: usize,
    pub strength: Strength,
}

/// A Nash equilibrium whose supports have at most two efforts per player.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedEquilibrium {
    pub support_1: Vec<usize>,
    pub support_2: Vec<usize>,
    pub efforts_1: Vec<f64>,
    pub efforts_2: Vec<f64>,
    pub probs_1: Vec<f64>,
    pub probs_2: Vec<f64>,
    /// The profile is one point of a continuum of equilibria on these
    /// supports (a player is indifferent whatever the rival mixes).
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "cells", rename_all = "snake_case")]
pub enum BrOutcome {
    FixedPoint(Cell),
    Cycle(Vec<Cell>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrPath {
    pub path: Vec<Cell>,
    pub outcome: BrOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashResult {
    pub pure_equilibria: Vec<Cell>,
    pub dominance: Vec<DominanceRelation>,
    pub mixed_2support: Vec<MixedEquilibrium>,
    pub exists_pure: bool,
    /// Best-response cycle from the first cell, when no pure equilibrium exists.
    pub br_cycle: Option<Vec<Cell>>,
}

impl Bimatrix {
    pub fn rows(&self) -> usize {
        self.efforts_1.len()
    }

    pub fn cols(&self) -> usize {
        self.efforts_2.len()
    }

    pub fn cell_efforts(&self, (r, c): Cell) -> (f64, f64) {
        (self.efforts_1[r], self.efforts_2[c])
    }

    pub fn cell_payoffs(&self, (r, c): Cell) -> (f64, f64) {
        (self.payoff_1[r][c], self.payoff_2[r][c])
    }

    /// Lowest row index among player 1's best responses to column `c`.
    pub fn best_row(&self, c: usize, tie: f64) -> usize {
        let best = (0..self.rows())
            .map(|r| self.payoff_1[r][c])
            .fold(f64::NEG_INFINITY, f64::max);
        (0..self.rows())
            .find(|&r| self.payoff_1[r][c] >= best - tie)
            .unwrap_or(0)
    }

    /// Lowest column index among player 2's best responses to row `r`.
    pub fn best_col(&self, r: usize, tie: f64) -> usize {
        let best = self.payoff_2[r].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (0..self.cols())
            .find(|&c| self.payoff_2[r][c] >= best - tie)
            .unwrap_or(0)
    }

    pub fn is_pure_nash(&self, (r, c): Cell, tie: f64) -> bool {
        let best_1 = (0..self.rows())
            .map(|k| self.payoff_1[k][c])
            .fold(f64::NEG_INFINITY, f64::max);
        let best_2 = self.payoff_2[r].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        self.payoff_1[r][c] >= best_1 - tie && self.payoff_2[r][c] >= best_2 - tie
    }

    /// Payoffs of `player` laid out as `[own index][rival index]`.
    fn own_view(&self, player: u8) -> Vec<Vec<f64>> {
        match player {
            1 => self.payoff_1.clone(),
            _ => (0..self.cols())
                .map(|c| (0..self.rows()).map(|r| self.payoff_2[r][c]).collect())
                .collect(),
        }
    }
}

pub fn build_bimatrix(
    v1: Valuation,
    v2: Valuation,
    f: &ImpactFunction,
    efforts_1: &[f64],
    efforts_2: &[f64],
) -> Result<Bimatrix> {
    if efforts_1.is_empty() {
        return Err(ContestError::EmptyEfforts(1));
    }
    if efforts_2.is_empty() {
        return Err(ContestError::EmptyEfforts(2));
    }
    for &e in efforts_1.iter().chain(efforts_2) {
        check_effort(e)?;
    }
    let mut payoff_1 = Vec::with_capacity(efforts_1.len());
    let mut payoff_2 = Vec::with_capacity(efforts_1.len());
    for &e1 in efforts_1 {
        let mut row_1 = Vec::with_capacity(efforts_2.len());
        let mut row_2 = Vec::with_capacity(efforts_2.len());
        for &e2 in efforts_2 {
            row_1.push(expected_payoff(v1, f, e1, e2)?);
            row_2.push(expected_payoff(v2, f, e2, e1)?);
        }
        payoff_1.push(row_1);
        payoff_2.push(row_2);
    }
    Ok(Bimatrix {
        efforts_1: efforts_1.to_vec(),
        efforts_2: efforts_2.to_vec(),
        payoff_1,
        payoff_2,
    })
}

pub fn pure_nash(b: &Bimatrix) -> Vec<Cell> {
    pure_nash_with(b, TIE_TOLERANCE)
}

pub fn pure_nash_with(b: &Bimatrix, tie: f64) -> Vec<Cell> {
    let best_1: Vec<f64> = (0..b.cols())
        .map(|c| {
            (0..b.rows())
                .map(|r| b.payoff_1[r][c])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let best_2: Vec<f64> = b
        .payoff_2
        .iter()
        .map(|row| row.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let mut cells = Vec::new();
    for (r, &row_best) in best_2.iter().enumerate() {
        for (c, &col_best) in best_1.iter().enumerate() {
            if b.payoff_1[r][c] >= col_best - tie && b.payoff_2[r][c] >= row_best - tie {
                cells.push((r, c));
            }
        }
    }
    cells
}

pub fn dominance(b: &Bimatrix) -> Vec<DominanceRelation> {
    dominance_with(b, TIE_TOLERANCE)
}

/// All pairwise strict and weak dominance relations, player 1 first.
/// Payoff-equivalent strategies are not reported.
pub fn dominance_with(b: &Bimatrix, tie: f64) -> Vec<DominanceRelation> {
    let mut out = Vec::new();
    for player in [1u8, 2] {
        let own = b.own_view(player);
        let efforts = if player == 1 { &b.efforts_1 } else { &b.efforts_2 };
        for a in 0..own.len() {
            for d in 0..own.len() {
                if a == d {
                    continue;
                }
                let gaps: Vec<f64> = own[a].iter().zip(&own[d]).map(|(x, y)| x - y).collect();
                let strength = if gaps.iter().all(|&g| g > tie) {
                    Some(Strength::Strict)
                } else if gaps.iter().all(|&g| g >= -tie) && gaps.iter().any(|&g| g > tie) {
                    Some(Strength::Weak)
                } else {
                    None
                };
                if let Some(strength) = strength {
                    out.push(DominanceRelation {
                        player,
                        dominating: efforts[a],
                        dominated: efforts[d],
                        dominating_index: a,
                        dominated_index: d,
                        strength,
                    });
                }
            }
        }
    }
    out
}

/// Solution set of one player's mixing probability on a 2-support.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Mix {
    /// Pure strategy; no parameter.
    Pure,
    /// Weight on the first support element is pinned down.
    Point(f64),
    /// Any weight keeps the rival indifferent.
    Free,
}

/// Equilibria with at most two efforts in each player's support, by support
/// enumeration.
pub fn mixed_2support(b: &Bimatrix) -> Vec<MixedEquilibrium> {
    mixed_2support_with(b, MIXED_TOLERANCE)
}

pub fn mixed_2support_with(b: &Bimatrix, tol: f64) -> Vec<MixedEquilibrium> {
    let own_1 = b.own_view(1);
    let own_2 = b.own_view(2);
    let supports = |n: usize| -> Vec<Vec<usize>> {
        let mut s: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for i in 0..n {
            for j in i + 1..n {
                s.push(vec![i, j]);
            }
        }
        s
    };
    let supports_1 = supports(b.rows());
    let supports_2 = supports(b.cols());
    supports_1
        .par_iter()
        .flat_map_iter(|s1| {
            supports_2
                .iter()
                .filter_map(|s2| solve_supports(b, &own_1, &own_2, s1, s2, tol))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Indifference of the owner of `own` between the two elements of `support`,
/// as a condition on the rival's weight `t` on `rival_support[0]`.
fn rival_weight(own: &[Vec<f64>], support: &[usize], rival_support: &[usize], tol: f64) -> Option<Mix> {
    if support.len() == 1 {
        return Some(if rival_support.len() == 1 { Mix::Pure } else { Mix::Free });
    }
    let gap = |j: usize| own[support[0]][j] - own[support[1]][j];
    match rival_support {
        [j] => (gap(*j).abs() <= tol).then_some(Mix::Pure),
        [j0, j1] => {
            // t · gap(j0) + (1 − t) · gap(j1) = 0
            let (g0, g1) = (gap(*j0), gap(*j1));
            if g0.abs() <= tol && g1.abs() <= tol {
                Some(Mix::Free)
            } else if (g1 - g0).abs() <= tol {
                None
            } else {
                Some(Mix::Point(g1 / (g1 - g0)))
            }
        }
        _ => None,
    }
}

/// Expected payoff to each own strategy against the rival mixing `weights`
/// over `rival_support`.
fn payoffs_against(own: &[Vec<f64>], rival_support: &[usize], weights: &[f64]) -> Vec<f64> {
    own.iter()
        .map(|row| rival_support.iter().zip(weights).map(|(&j, &w)| w * row[j]).sum())
        .collect()
}

/// Interval of the weight `t` on `support[0]` for which the rival (owner of
/// `rival_own`) has no profitable deviation outside `rival_support`.
fn free_weight_interval(
    rival_own: &[Vec<f64>],
    rival_support: &[usize],
    support: &[usize],
    tol: f64,
) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let base = rival_support[0];
    for k in 0..rival_own.len() {
        if rival_support.contains(&k) {
            continue;
        }
        // gain(t) = t · a0 + (1 − t) · a1 must stay <= tol
        let a0 = rival_own[k][support[0]] - rival_own[base][support[0]];
        let a1 = rival_own[k][support[1]] - rival_own[base][support[1]];
        let slope = a0 - a1;
        if slope.abs() <= f64::EPSILON {
            if a1 > tol {
                return None;
            }
        } else if slope > 0.0 {
            hi = hi.min((tol - a1) / slope);
        } else {
            lo = lo.max((tol - a1) / slope);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn solve_supports(
    b: &Bimatrix,
    own_1: &[Vec<f64>],
    own_2: &[Vec<f64>],
    s1: &[usize],
    s2: &[usize],
    tol: f64,
) -> Option<MixedEquilibrium> {
    // Player 1's indifference pins player 2's weights and vice versa.
    let mix_2 = rival_weight(own_1, s1, s2, tol)?;
    let mix_1 = rival_weight(own_2, s2, s1, tol)?;
    let interior = |t: f64| t > tol && t < 1.0 - tol;
    let resolve = |mix: Mix, support: &[usize], rival_own: &[Vec<f64>], rival_support: &[usize]| match mix {
        Mix::Pure => Some(vec![1.0]),
        Mix::Point(t) => interior(t).then(|| vec![t, 1.0 - t]),
        Mix::Free => {
            if support.len() == 1 {
                return Some(vec![1.0]);
            }
            let (lo, hi) = free_weight_interval(rival_own, rival_support, support, tol)?;
            let t = 0.5 * (lo + hi);
            interior(t).then(|| vec![t, 1.0 - t])
        }
    };
    let probs_1 = resolve(mix_1, s1, own_2, s2)?;
    let probs_2 = resolve(mix_2, s2, own_1, s1)?;

    // No profitable deviation for either player.
    let vs_2 = payoffs_against(own_1, s2, &probs_2);
    let vs_1 = payoffs_against(own_2, s1, &probs_1);
    let ok = |values: &[f64], support: &[usize]| {
        let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        support.iter().all(|&i| values[i] >= best - tol)
    };
    if !ok(&vs_2, s1) || !ok(&vs_1, s2) {
        return None;
    }
    Some(MixedEquilibrium {
        support_1: s1.to_vec(),
        support_2: s2.to_vec(),
        efforts_1: s1.iter().map(|&i| b.efforts_1[i]).collect(),
        efforts_2: s2.iter().map(|&j| b.efforts_2[j]).collect(),
        probs_1,
        probs_2,
        degenerate: (s1.len() == 2 && mix_1 == Mix::Free) || (s2.len() == 2 && mix_2 == Mix::Free),
    })
}

/// Alternating best responses from `start`, player 1 moving first, with
/// lowest-index tie-breaking.
///
/// Stops at a pure equilibrium or at the first revisited state, which closes
/// a cycle.
pub fn best_response_dynamics(b: &Bimatrix, start: Cell, max_iter: usize) -> Result<BrPath> {
    let (rows, cols) = (b.rows(), b.cols());
    if start.0 >= rows || start.1 >= cols {
        return Err(ContestError::InvalidCell {
            row: start.0,
            col: start.1,
            rows,
            cols,
        });
    }
    let mut cell = start;
    let mut mover = 1u8;
    let mut path = vec![cell];
    let mut seen: HashMap<(Cell, u8), usize> = HashMap::new();
    for _ in 0..max_iter {
        if b.is_pure_nash(cell, TIE_TOLERANCE) {
            return Ok(BrPath {
                path,
                outcome: BrOutcome::FixedPoint(cell),
            });
        }
        if let Some(&first) = seen.get(&(cell, mover)) {
            let cycle = path[first..path.len() - 1].to_vec();
            return Ok(BrPath {
                path,
                outcome: BrOutcome::Cycle(cycle),
            });
        }
        seen.insert((cell, mover), path.len() - 1);
        cell = match mover {
            1 => (b.best_row(cell.1, TIE_TOLERANCE), cell.1),
            _ => (cell.0, b.best_col(cell.0, TIE_TOLERANCE)),
        };
        mover = 3 - mover;
        path.push(cell);
    }
    Err(ContestError::NonConvergence {
        what: "best-response dynamics",
        iterations: max_iter,
    })
}

/// Full analysis of a finite game.
pub fn analyze(b: &Bimatrix) -> Result<NashResult> {
    let pure_equilibria = pure_nash(b);
    let exists_pure = !pure_equilibria.is_empty();
    let br_cycle = if exists_pure {
        None
    } else {
        match best_response_dynamics(b, (0, 0), 4 * b.rows() * b.cols() + 4)?.outcome {
            BrOutcome::Cycle(c) => Some(c),
            BrOutcome::FixedPoint(_) => None,
        }
    };
    Ok(NashResult {
        pure_equilibria,
        dominance: dominance(b),
        mixed_2support: mixed_2support(b),
        exists_pure,
        br_cycle,
    })
}

pub const ASYMMETRIC_MAX_ITER: usize = 10_000;

/// Equilibrium of the unconstrained contest with valuations `v1`, `v2`.
///
/// Closed form for linear impact, damped best-response iteration otherwise.
pub fn unconstrained_asymmetric(v1: Valuation, v2: Valuation, f: &ImpactFunction) -> Result<(f64, f64)> {
    if f.exponent() == 1.0 {
        let (a, b) = (v1.get(), v2.get());
        let s = (a + b) * (a + b);
        return Ok((a * a * b / s, b * b * a / s));
    }
    unconstrained_asymmetric_iterative(v1, v2, f)
}

/// Best response to `rival` over `[0, v]` by golden-section search.
pub fn best_response(v: Valuation, f: &ImpactFunction, rival: f64) -> f64 {
    let tol = 1e-15 * v.get().max(1.0);
    golden_section_max(|a, b| payoff_difference(v, f, a, b, rival), 0.0, v.get(), tol)
}

/// Alternating best responses with damping 0.5 until both efforts move by
/// less than `1e-10`.
pub fn unconstrained_asymmetric_iterative(v1: Valuation, v2: Valuation, f: &ImpactFunction) -> Result<(f64, f64)> {
    let r = f.exponent();
    let mut e1 = r * v1.get() / 4.0;
    let mut e2 = r * v2.get() / 4.0;
    for _ in 0..ASYMMETRIC_MAX_ITER {
        let n1 = 0.5 * e1 + 0.5 * best_response(v1, f, e2);
        let n2 = 0.5 * e2 + 0.5 * best_response(v2, f, n1);
        let moved = (n1 - e1).abs().max((n2 - e2).abs());
        e1 = n1;
        e2 = n2;
        if moved < 1e-10 {
            return Ok((e1, e2));
        }
    }
    Err(ContestError::NonConvergence {
        what: "asymmetric best-response iteration",
        iterations: ASYMMETRIC_MAX_ITER,
    })
}

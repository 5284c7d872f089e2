//! Logit contest success function and expected payoffs.
//!
//! A player exerting effort `e_i` against a rival at `e_j` wins with
//! probability `f(e_i) / (f(e_i) + f(e_j))`, or exactly one half when both
//! efforts are zero. Payoffs are risk neutral: `p · v − e_i`.

use serde::{Deserialize, Serialize};

use crate::error::{ContestError, Result};

/// Parametric family of concave impact functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImpactFamily {
    /// `f(e) = a · e^r` with `a > 0`, `0 < r <= 1`.
    ScaledPower,
}

/// Concave impact function `f` with `f(0) = 0`, `f' > 0`, `f'' <= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImpactFunction {
    family: ImpactFamily,
    r: f64,
    a: f64,
}

impl ImpactFunction {
    pub fn scaled_power(r: f64, a: f64) -> Result<Self> {
        if !(r.is_finite() && a.is_finite() && r > 0.0 && r <= 1.0 && a > 0.0) {
            return Err(ContestError::InvalidImpact { r, a });
        }
        Ok(Self {
            family: ImpactFamily::ScaledPower,
            r,
            a,
        })
    }

    /// The identity impact `f(e) = e` (Tullock with unit exponent).
    pub fn linear() -> Self {
        Self {
            family: ImpactFamily::ScaledPower,
            r: 1.0,
            a: 1.0,
        }
    }

    pub fn family(&self) -> ImpactFamily {
        self.family
    }

    pub fn exponent(&self) -> f64 {
        self.r
    }

    pub fn scale(&self) -> f64 {
        self.a
    }

    pub fn eval(&self, e: f64) -> Result<f64> {
        check_effort(e)?;
        Ok(self.eval_unchecked(e))
    }

    pub(crate) fn eval_unchecked(&self, e: f64) -> f64 {
        match self.family {
            ImpactFamily::ScaledPower => {
                if e == 0.0 {
                    0.0
                } else if self.r == 1.0 {
                    self.a * e
                } else {
                    self.a * e.powf(self.r)
                }
            }
        }
    }

    /// `f'(e)`; infinite at `e = 0` when `r < 1`.
    pub fn derivative(&self, e: f64) -> Result<f64> {
        check_effort(e)?;
        Ok(match self.family {
            ImpactFamily::ScaledPower => {
                if self.r == 1.0 {
                    self.a
                } else {
                    self.a * self.r * e.powf(self.r - 1.0)
                }
            }
        })
    }

    /// `f(x) − f(y)` without catastrophic cancellation when `x ≈ y`.
    pub(crate) fn difference(&self, x: f64, y: f64) -> f64 {
        match self.family {
            ImpactFamily::ScaledPower => {
                if self.r == 1.0 {
                    self.a * (x - y)
                } else if x == 0.0 || y == 0.0 {
                    self.eval_unchecked(x) - self.eval_unchecked(y)
                } else {
                    // x^r − y^r = y^r · expm1(r · ln(x / y))
                    let ratio_log = ((x - y) / y).ln_1p();
                    self.a * y.powf(self.r) * (self.r * ratio_log).exp_m1()
                }
            }
        }
    }

    /// Closed-form root of the symmetric first-order condition
    /// `v · f'(e) / (4 f(e)) = 1`.
    pub fn symmetric_foc_root(&self, v: Valuation) -> f64 {
        match self.family {
            ImpactFamily::ScaledPower => self.r * v.get() / 4.0,
        }
    }
}

/// Prize value, strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Valuation(f64);

impl Valuation {
    pub fn new(v: f64) -> Result<Self> {
        if v.is_finite() && v > 0.0 {
            Ok(Self(v))
        } else {
            Err(ContestError::InvalidValuation(v))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Valuation {
    type Error = ContestError;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Valuation> for f64 {
    fn from(v: Valuation) -> f64 {
        v.0
    }
}

/// A pair of efforts, own effort first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffortPair {
    pub e_i: f64,
    pub e_j: f64,
}

impl EffortPair {
    pub fn new(e_i: f64, e_j: f64) -> Result<Self> {
        check_effort(e_i)?;
        check_effort(e_j)?;
        Ok(Self { e_i, e_j })
    }

    pub fn swapped(self) -> Self {
        Self {
            e_i: self.e_j,
            e_j: self.e_i,
        }
    }
}

pub(crate) fn check_effort(e: f64) -> Result<()> {
    if e.is_finite() && e >= 0.0 {
        Ok(())
    } else {
        Err(ContestError::NegativeEffort(e))
    }
}

pub fn eval_impact(f: &ImpactFunction, e: f64) -> Result<f64> {
    f.eval(e)
}

pub fn win_probability(f: &ImpactFunction, e_i: f64, e_j: f64) -> Result<f64> {
    check_effort(e_i)?;
    check_effort(e_j)?;
    Ok(ratio(f.eval_unchecked(e_i), f.eval_unchecked(e_j)))
}

pub fn expected_payoff(v: Valuation, f: &ImpactFunction, e_i: f64, e_j: f64) -> Result<f64> {
    Ok(win_probability(f, e_i, e_j)? * v.get() - e_i)
}

/// `Eπ(x, y) − Eπ(x', y)` for one player, stable when `x ≈ x'`.
pub(crate) fn payoff_difference(v: Valuation, f: &ImpactFunction, x: f64, x_alt: f64, y: f64) -> f64 {
    let fy = f.eval_unchecked(y);
    let fx = f.eval_unchecked(x);
    let fx_alt = f.eval_unchecked(x_alt);
    if fy == 0.0 || fx + fy == 0.0 || fx_alt + fy == 0.0 {
        return (ratio(fx, fy) - ratio(fx_alt, fy)) * v.get() - (x - x_alt);
    }
    let dp = fy * f.difference(x, x_alt) / ((fx + fy) * (fx_alt + fy));
    dp * v.get() - (x - x_alt)
}

/// Win probability from impact values; the `(0, 0)` tie is an explicit branch.
#[inline]
pub(crate) fn ratio(fi: f64, fj: f64) -> f64 {
    if fi == 0.0 && fj == 0.0 {
        0.5
    } else {
        fi / (fi + fj)
    }
}

/// `[Eπ(x,y) − Eπ(y,y)] − [Eπ(x,x) − Eπ(y,x)]`, identically zero for a
/// symmetric contest.
pub fn payoff_identity_residual(v: Valuation, f: &ImpactFunction, x: f64, y: f64) -> Result<f64> {
    let gain_vs_y = expected_payoff(v, f, x, y)? - expected_payoff(v, f, y, y)?;
    let gain_vs_x = expected_payoff(v, f, x, x)? - expected_payoff(v, f, y, x)?;
    Ok(gain_vs_y - gain_vs_x)
}

/// Tolerance for the payoff identity at valuation `v`.
pub fn identity_tolerance(v: Valuation) -> f64 {
    1e-9 * v.get().max(1.0)
}

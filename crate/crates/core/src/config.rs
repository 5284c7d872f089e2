//! Problem instances and run settings, plus their JSON configuration form.
//!
//! ```json
//! {
//!   "valuations": [1, 2],
//!   "impact": { "family": "scaled_power", "r": 1, "a": 1 },
//!   "efforts_1": ["1/9", 0.2, "2/3"],
//!   "efforts_2": ["1/9", 0.2, "2/3"]
//! }
//! ```
//!
//! `valuations` is one number (common value) or two. A shared `choice_set`
//! lists `[lo, hi]` pairs or bare numbers for points. Any number may also be
//! written as a string, either decimal or an exact fraction `"p/q"`.

use serde::{Deserialize, Serialize};

use crate::choice_set::{ChoiceSet, Segment};
use crate::error::{ContestError, Result};
use crate::payoff::{ImpactFamily, ImpactFunction, Valuation};

/// Strategy sets of a contest: one set for both players or a finite list each.
#[derive(Debug, Clone, PartialEq)]
pub enum Strategies {
    Shared(ChoiceSet),
    PerPlayer { efforts_1: Vec<f64>, efforts_2: Vec<f64> },
}

/// A complete contest instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ContestSpec {
    pub valuation_1: Valuation,
    pub valuation_2: Valuation,
    pub impact: ImpactFunction,
    pub strategies: Strategies,
}

impl ContestSpec {
    pub fn symmetric(v: Valuation, impact: ImpactFunction, choice_set: ChoiceSet) -> Self {
        Self {
            valuation_1: v,
            valuation_2: v,
            impact,
            strategies: Strategies::Shared(choice_set),
        }
    }

    pub fn finite(
        v1: Valuation,
        v2: Valuation,
        impact: ImpactFunction,
        efforts_1: Vec<f64>,
        efforts_2: Vec<f64>,
    ) -> Self {
        Self {
            valuation_1: v1,
            valuation_2: v2,
            impact,
            strategies: Strategies::PerPlayer { efforts_1, efforts_2 },
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.valuation_1 == self.valuation_2 && matches!(self.strategies, Strategies::Shared(_))
    }

    /// The common valuation and shared choice set, or why there is none.
    pub fn symmetric_parts(&self) -> Result<(Valuation, &ChoiceSet)> {
        let set = match &self.strategies {
            Strategies::Shared(s) => s,
            Strategies::PerPlayer { .. } => return Err(ContestError::NoSharedChoiceSet),
        };
        if self.valuation_1 != self.valuation_2 {
            return Err(ContestError::AsymmetricValuations {
                v1: self.valuation_1.get(),
                v2: self.valuation_2.get(),
            });
        }
        Ok((self.valuation_1, set))
    }

    pub fn from_json(text: &str) -> Result<ParsedConfig> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let field = if path.is_empty() || path == "." {
                String::new()
            } else {
                format!("field `{path}`: ")
            };
            ContestError::Config(format!("{field}{inner}"))
        })?;
        raw.into_parsed()
    }
}

/// Numerical tolerances shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute bracket width at which bisection stops.
    pub root: f64,
    /// Distance between ê and e̲ treated as the knife-edge case.
    pub knife_edge: f64,
    /// Payoff ties in best-response comparisons.
    pub tie: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: 1e-12,
            knife_edge: 1e-9,
            tie: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, t) in [("root", self.root), ("knife_edge", self.knife_edge), ("tie", self.tie)] {
            if !(t.is_finite() && t > 0.0) {
                return Err(ContestError::Config(format!(
                    "tolerance `{name}` must be positive, got {t}"
                )));
            }
        }
        Ok(())
    }
}

pub const DEFAULT_GRID_STEP: f64 = 1e-3;

/// Settings for one run of the tools.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub grid_step: f64,
    pub eps: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::with_grid_step(DEFAULT_GRID_STEP)
    }
}

impl RunConfig {
    /// Slack defaults to twice the grid step.
    pub fn with_grid_step(grid_step: f64) -> Self {
        Self {
            tolerances: Tolerances::default(),
            grid_step,
            eps: 2.0 * grid_step,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if !(self.grid_step.is_finite() && self.grid_step > 0.0) {
            return Err(ContestError::InvalidStep(self.grid_step));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return Err(ContestError::Config(format!(
                "eps must be nonnegative, got {}",
                self.eps
            )));
        }
        Ok(())
    }
}

/// A parsed configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub spec: ContestSpec,
    pub tolerances: Tolerances,
    pub grid_step: Option<f64>,
    pub eps: Option<f64>,
}

impl ParsedConfig {
    /// Run settings from the file, with command-line overrides applied on top.
    pub fn run_config(&self, grid_step: Option<f64>, eps: Option<f64>) -> Result<RunConfig> {
        let h = grid_step.or(self.grid_step).unwrap_or(DEFAULT_GRID_STEP);
        let run = RunConfig {
            tolerances: self.tolerances,
            grid_step: h,
            eps: eps.or(self.eps).unwrap_or(2.0 * h),
        };
        run.validate()?;
        Ok(run)
    }
}

/// A number written as a JSON number, a decimal string or a fraction `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Number(f64);

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Float(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Float(x) => Ok(Number(x)),
            Repr::Text(s) => parse_number(&s).map(Number).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses `"0.18"` or an exact fraction `"5/9"` (numerator divided by
/// denominator in one correctly rounded step).
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            num / den
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawValuations {
    One(Number),
    Many(Vec<Number>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSegment {
    Point(Number),
    Interval([Number; 2]),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImpact {
    #[serde(default = "default_family")]
    family: ImpactFamily,
    r: Number,
    #[serde(default = "default_scale")]
    a: Number,
}

fn default_family() -> ImpactFamily {
    ImpactFamily::ScaledPower
}

fn default_scale() -> Number {
    Number(1.0)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    valuations: RawValuations,
    impact: Option<RawImpact>,
    choice_set: Option<Vec<RawSegment>>,
    efforts_1: Option<Vec<Number>>,
    efforts_2: Option<Vec<Number>>,
    #[serde(default)]
    tolerances: Tolerances,
    grid_step: Option<Number>,
    eps: Option<Number>,
}

impl RawConfig {
    fn into_parsed(self) -> Result<ParsedConfig> {
        let field = |name: &str, e: ContestError| ContestError::Config(format!("field `{name}`: {e}"));
        let (v1, v2) = match self.valuations {
            RawValuations::One(v) => (v.0, v.0),
            RawValuations::Many(vs) => match vs.as_slice() {
                [v] => (v.0, v.0),
                [a, b] => (a.0, b.0),
                _ => {
                    return Err(ContestError::Config(format!(
                        "field `valuations`: expected one or two values, got {}",
                        vs.len()
                    )))
                }
            },
        };
        let valuation_1 = Valuation::new(v1).map_err(|e| field("valuations", e))?;
        let valuation_2 = Valuation::new(v2).map_err(|e| field("valuations", e))?;
        let impact = match self.impact {
            None => ImpactFunction::linear(),
            Some(raw) => match raw.family {
                ImpactFamily::ScaledPower => {
                    ImpactFunction::scaled_power(raw.r.0, raw.a.0).map_err(|e| field("impact", e))?
                }
            },
        };
        let strategies = match (self.choice_set, self.efforts_1, self.efforts_2) {
            (Some(segments), None, None) => {
                let segments = segments
                    .into_iter()
                    .map(|s| match s {
                        RawSegment::Point(p) => Segment::point(p.0),
                        RawSegment::Interval([lo, hi]) => Segment::new(lo.0, hi.0),
                    })
                    .collect::<Result<Vec<_>>>()
                    .and_then(ChoiceSet::new)
                    .map_err(|e| field("choice_set", e))?;
                Strategies::Shared(segments)
            }
            (None, Some(e1), Some(e2)) => {
                let list = |name: &str, player: usize, xs: Vec<Number>| -> Result<Vec<f64>> {
                    if xs.is_empty() {
                        return Err(field(name, ContestError::EmptyEfforts(player)));
                    }
                    xs.into_iter()
                        .map(|x| crate::payoff::check_effort(x.0).map(|_| x.0))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| field(name, e))
                };
                Strategies::PerPlayer {
                    efforts_1: list("efforts_1", 1, e1)?,
                    efforts_2: list("efforts_2", 2, e2)?,
                }
            }
            _ => {
                return Err(ContestError::Config(
                    "give either `choice_set` or both `efforts_1` and `efforts_2`".into(),
                ))
            }
        };
        self.tolerances.validate()?;
        Ok(ParsedConfig {
            spec: ContestSpec {
                valuation_1,
                valuation_2,
                impact,
                strategies,
            },
            tolerances: self.tolerances,
            grid_step: self.grid_step.map(|n| n.0),
            eps: self.eps.map(|n| n.0),
        })
    }
}

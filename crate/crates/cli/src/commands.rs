use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use contest_core::finite_game::{analyze, build_bimatrix};
use contest_core::oracle::{discretize, finite_lists, verify_finite, verify_report, verify_with_lists};
use contest_core::symmetric::{classify_with, threshold_sweep};
use contest_core::{
    bracket, identity_tolerance, payoff_identity_residual, unconstrained_equilibrium, ContestSpec, ImpactFunction,
    ParsedConfig, Placement, Strategies, Valuation,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::render::{self, IdentityReport, MatrixReport, OracleMode, OracleReport};
use crate::{Format, Output};

fn load(path: &Path) -> Result<ParsedConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ContestSpec::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Output, text: String) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn solve(config: &Path, out: &Output) -> Result<u8> {
    let parsed = load(config)?;
    if !parsed.spec.is_symmetric() {
        bail!(
            "{}; `solve` handles symmetric contests only, use `contest matrix` for asymmetric or per-player efforts",
            parsed
                .spec
                .symmetric_parts()
                .err()
                .map(|e| e.to_string())
                .unwrap_or_default()
        );
    }
    let report = classify_with(&parsed.spec, &parsed.tolerances)?;
    let text = match out.format {
        Format::Json => json(&report)?,
        Format::Text => render::equilibrium_report(&report),
    };
    emit(out, text)?;
    Ok(0)
}

pub fn matrix(config: &Path, grid_step: Option<f64>, out: &Output) -> Result<u8> {
    let parsed = load(config)?;
    let spec = &parsed.spec;
    let (efforts_1, efforts_2) = match (&spec.strategies, grid_step) {
        (Strategies::Shared(set), Some(h)) if !set.is_finite() => {
            let points = discretize(set, h)?.points;
            (points.clone(), points)
        }
        _ => finite_lists(spec).context("`matrix` needs finite effort lists; rerun with --grid-step H")?,
    };
    let bimatrix = build_bimatrix(spec.valuation_1, spec.valuation_2, &spec.impact, &efforts_1, &efforts_2)?;
    let nash = analyze(&bimatrix)?;
    let report = MatrixReport {
        valuations: (spec.valuation_1.get(), spec.valuation_2.get()),
        bimatrix,
        nash,
    };
    let text = match out.format {
        Format::Json => json(&report)?,
        Format::Text => render::matrix_report(&report),
    };
    emit(out, text)?;
    Ok(0)
}

pub fn sweep(
    config: &Path,
    from: Option<f64>,
    to: Option<f64>,
    steps: usize,
    e_low: Option<f64>,
    out: &Output,
) -> Result<u8> {
    let parsed = load(config)?;
    let spec = &parsed.spec;
    if spec.valuation_1 != spec.valuation_2 {
        bail!("`sweep` needs a common valuation");
    }
    let v = spec.valuation_1;
    let e_star = unconstrained_equilibrium(v, &spec.impact);
    let from = from.unwrap_or(e_star);
    let to = to.unwrap_or(v.get() / 2.0);
    if from < e_star || to < from {
        bail!("sweep range [{from}, {to}] must start at or above e* = {e_star} and be increasing");
    }
    let e_low = match (e_low, &spec.strategies) {
        (Some(e), _) => e,
        (None, Strategies::Shared(set)) => match bracket(set, e_star) {
            Placement::Bracketed(b) => b.e_low,
            Placement::AllBelow { max } => max,
            Placement::AllAbove { .. } => 0.0,
        },
        (None, _) => 0.0,
    };
    let rows = threshold_sweep(v, &spec.impact, e_low, from, to, steps, &parsed.tolerances)?;
    let text = match out.format {
        Format::Json => json(&rows)?,
        Format::Text => render::sweep_csv(&rows),
    };
    emit(out, text)?;
    Ok(0)
}

pub fn identity_check(
    v: f64,
    r: f64,
    a: f64,
    samples: usize,
    seed: u64,
    force_equal: bool,
    out: &Output,
) -> Result<u8> {
    if samples == 0 {
        bail!("--samples must be at least 1");
    }
    let val = Valuation::new(v)?;
    let f = ImpactFunction::scaled_power(r, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = -1.0f64;
    let mut worst_pair = (0.0, 0.0);
    for _ in 0..samples {
        let x = rng.gen_range(0.0..2.0 * v);
        let y = if force_equal { x } else { rng.gen_range(0.0..2.0 * v) };
        let res = payoff_identity_residual(val, &f, x, y)?.abs();
        if res > max_residual {
            max_residual = res;
            worst_pair = (x, y);
        }
    }
    let tolerance = identity_tolerance(val);
    let report = IdentityReport {
        v,
        r,
        a,
        samples,
        seed,
        max_residual,
        worst_pair,
        tolerance,
        pass: max_residual <= tolerance,
    };
    let text = match out.format {
        Format::Json => json(&report)?,
        Format::Text => render::identity_report(&report),
    };
    emit(out, text)?;
    Ok(if report.pass { 0 } else { 1 })
}

pub fn oracle(config: &Path, grid_step: Option<f64>, eps: Option<f64>, corrupt: bool, out: &Output) -> Result<u8> {
    let parsed = load(config)?;
    let run = parsed.run_config(grid_step, eps)?;
    let spec = &parsed.spec;
    let shift = spec.valuation_1.get().max(spec.valuation_2.get()) / 5.0;
    let perturb = |pairs: Vec<(f64, f64)>| -> Vec<(f64, f64)> {
        if pairs.is_empty() {
            return vec![(shift, shift)];
        }
        pairs.into_iter().map(|(a, b)| (a + shift, b + shift)).collect()
    };
    let report = if spec.is_symmetric() {
        let mut report = classify_with(spec, &run.tolerances)?;
        if corrupt {
            report.equilibria = perturb(report.equilibria);
        }
        let verdict = verify_report(&report, spec, &run)?;
        OracleReport {
            mode: OracleMode::Symmetric,
            predicted: report.equilibria,
            corrupted: corrupt,
            verdict,
        }
    } else {
        let (predicted, verdict) = if corrupt {
            let (predicted, _) = verify_finite(spec, &run)?;
            let predicted = perturb(predicted);
            let (e1, e2) = finite_lists(spec)?;
            let verdict = verify_with_lists(spec, &e1, &e2, &predicted, &run)?;
            (predicted, verdict)
        } else {
            verify_finite(spec, &run)?
        };
        OracleReport {
            mode: OracleMode::Finite,
            predicted,
            corrupted: corrupt,
            verdict,
        }
    };
    let text = match out.format {
        Format::Json => json(&report)?,
        Format::Text => render::oracle_report(&report),
    };
    emit(out, text)?;
    Ok(if report.verdict.confirmed { 0 } else { 1 })
}

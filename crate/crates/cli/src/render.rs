use std::fmt::Write;

use contest_core::finite_game::{Bimatrix, NashResult, Strength};
use contest_core::oracle::OracleVerdict;
use contest_core::symmetric::SweepRow;
use contest_core::{DominantStrategy, EquilibriumReport, Placement};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixReport {
    /// `(player 1, player 2)`.
    pub valuations: (f64, f64),
    /// Rows are player 1's efforts; each cell holds both payoffs.
    pub bimatrix: Bimatrix,
    pub nash: NashResult,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub v: f64,
    pub r: f64,
    pub a: f64,
    pub samples: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub worst_pair: (f64, f64),
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    Symmetric,
    Finite,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub mode: OracleMode,
    pub predicted: Vec<(f64, f64)>,
    pub corrupted: bool,
    pub verdict: OracleVerdict,
}

/// Shortest decimal with at most 6 places, trailing zeros trimmed.
pub fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn pair((a, b): (f64, f64)) -> String {
    format!("({}, {})", num(a), num(b))
}

fn pairs(list: &[(f64, f64)]) -> String {
    if list.is_empty() {
        return "none".to_string();
    }
    list.iter().map(|&p| pair(p)).collect::<Vec<_>>().join(", ")
}

pub fn equilibrium_report(r: &EquilibriumReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "valuation        {}", num(r.valuation));
    let _ = writeln!(s, "e*               {}", num(r.e_star));
    let placement = match r.placement {
        Placement::Bracketed(b) if b.interior => format!("e* feasible ({})", num(b.e_low)),
        Placement::Bracketed(b) => format!("bracket e_low = {}, e_high = {}", num(b.e_low), num(b.e_high)),
        Placement::AllBelow { max } => format!("all efforts below e*, max = {}", num(max)),
        Placement::AllAbove { min } => format!("all efforts above e*, min = {}", num(min)),
    };
    let _ = writeln!(s, "placement        {placement}");
    let threshold = match (r.threshold, r.placement.bracket()) {
        (Some(t), _) => num(t),
        (None, Some(b)) if b.e_high > r.valuation / 2.0 => "none: e_high > v/2".to_string(),
        (None, _) => "none".to_string(),
    };
    let _ = writeln!(s, "threshold        {threshold}");
    let _ = writeln!(s, "case             {}", r.case.label());
    let _ = writeln!(s, "equilibria       {}", pairs(&r.equilibria));
    if let Some(d) = r.dominant_strategy_2x2 {
        let text = match d {
            DominantStrategy::Strict { effort } => format!("strict, {}", num(effort)),
            DominantStrategy::Weak { effort } => format!("weak, {}", num(effort)),
            DominantStrategy::Indifferent => "indifferent".to_string(),
        };
        let _ = writeln!(s, "dominant (2x2)   {text}");
    }
    let _ = writeln!(s, "rent dissipation {}", num(r.rent_dissipation));
    for d in &r.diagnostics {
        let _ = writeln!(s, "note: {d}");
    }
    s
}

fn table(b: &Bimatrix) -> String {
    let header: Vec<String> = b.efforts_2.iter().map(|&e| num(e)).collect();
    let rows: Vec<(String, Vec<String>)> = (0..b.rows())
        .map(|r| {
            let cells = (0..b.cols())
                .map(|c| {
                    let (p1, p2) = b.cell_payoffs((r, c));
                    format!("{}, {}", num(p1), num(p2))
                })
                .collect();
            (num(b.efforts_1[r]), cells)
        })
        .collect();
    let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(5);
    let col_w = rows
        .iter()
        .flat_map(|(_, c)| c.iter().map(String::len))
        .chain(header.iter().map(String::len))
        .max()
        .unwrap_or(0);
    let mut s = String::new();
    let _ = write!(s, "{:>label_w$}", "1 \\ 2");
    for h in &header {
        let _ = write!(s, " | {h:>col_w$}");
    }
    s.push('\n');
    for (label, cells) in rows {
        let _ = write!(s, "{label:>label_w$}");
        for c in cells {
            let _ = write!(s, " | {c:>col_w$}");
        }
        s.push('\n');
    }
    s
}

pub fn matrix_report(r: &MatrixReport) -> String {
    let b = &r.bimatrix;
    let n = &r.nash;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "valuations  v1 = {}, v2 = {}",
        num(r.valuations.0),
        num(r.valuations.1)
    );
    s.push_str(&table(b));
    let eq: Vec<(f64, f64)> = n.pure_equilibria.iter().map(|&c| b.cell_efforts(c)).collect();
    if eq.is_empty() {
        let _ = writeln!(s, "no pure-strategy Nash equilibrium");
    } else {
        let _ = writeln!(s, "pure equilibria  {}", pairs(&eq));
    }
    for d in &n.dominance {
        let strength = match d.strength {
            Strength::Strict => "strictly",
            Strength::Weak => "weakly",
        };
        let _ = writeln!(
            s,
            "player {}: {} {} dominates {}",
            d.player,
            num(d.dominating),
            strength,
            num(d.dominated)
        );
    }
    for m in &n.mixed_2support {
        if m.support_1.len() == 1 && m.support_2.len() == 1 {
            continue;
        }
        let side = |efforts: &[f64], probs: &[f64]| {
            efforts
                .iter()
                .zip(probs)
                .map(|(&e, &p)| format!("{}@{}", num(e), num(p)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(
            s,
            "mixed  p1 [{}]  p2 [{}]{}",
            side(&m.efforts_1, &m.probs_1),
            side(&m.efforts_2, &m.probs_2),
            if m.degenerate { "  (one of a continuum)" } else { "" }
        );
    }
    if let Some(cycle) = &n.br_cycle {
        let cells: Vec<(f64, f64)> = cycle.iter().map(|&c| b.cell_efforts(c)).collect();
        let _ = writeln!(s, "best-response cycle  {}", pairs(&cells));
    }
    s
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("e_high,e_hat,case\n");
    for row in rows {
        let e_hat = row.e_hat.map(num).unwrap_or_else(|| "no threshold".to_string());
        let _ = writeln!(s, "{},{},{}", num(row.e_high), e_hat, row.case.label());
    }
    s
}

pub fn identity_report(r: &IdentityReport) -> String {
    format!(
        "samples {} (seed {}), v = {}, r = {}, a = {}\nmax residual {:e} at {}\ntolerance {:e}\n{}\n",
        r.samples,
        r.seed,
        num(r.v),
        num(r.r),
        num(r.a),
        r.max_residual,
        pair(r.worst_pair),
        r.tolerance,
        if r.pass { "PASS" } else { "FAIL" }
    )
}

pub fn oracle_report(r: &OracleReport) -> String {
    let v = &r.verdict;
    let p = v.parameters;
    let mut s = String::new();
    let _ = writeln!(s, "grid step {}, eps {}, delta {}", num(p.h), num(p.eps), num(p.delta));
    let _ = writeln!(
        s,
        "predicted {}{}",
        pairs(&r.predicted),
        if r.corrupted { "  (corrupted)" } else { "" }
    );
    let _ = writeln!(s, "missing   {}", pairs(&v.predicted_missing));
    let _ = writeln!(s, "extra     {}", pairs(&v.extra_found));
    let _ = writeln!(s, "{}", if v.confirmed { "CONFIRMED" } else { "REFUTED" });
    s
}

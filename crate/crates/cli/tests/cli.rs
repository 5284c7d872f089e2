use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use contest_core::symmetric::SweepRow;
use contest_core::{EquilibriumCase, EquilibriumReport};
use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contest"))
        .args(args)
        .output()
        .expect("spawn contest")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn solve_json(name: &str) -> EquilibriumReport {
    let path = scenario(name);
    let text = run_ok(&["solve", "--config", path.to_str().unwrap(), "--format", "json"]);
    serde_json::from_str(&text).unwrap()
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("contest-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

#[test]
fn solve_effortless_equilibrium() {
    let r = solve_json("gap_effortless.json");
    assert_eq!(r.case, EquilibriumCase::CaseA);
    assert_eq!(r.equilibria, vec![(0.0, 0.0)]);
    assert_eq!(r.rent_dissipation, 0.0);
    assert!(r.threshold.is_none());

    let text = run_ok(&["solve", "--config", scenario("gap_effortless.json").to_str().unwrap()]);
    assert!(text.contains("none: e_high > v/2"), "{text}");
}

#[test]
fn solve_high_effort_equilibrium() {
    let r = solve_json("gap_high_effort.json");
    assert_eq!(r.case, EquilibriumCase::CaseB);
    assert_eq!(r.equilibria, vec![(0.45, 0.45)]);
    assert!((r.rent_dissipation - 0.9).abs() < 1e-12);
}

#[test]
fn solve_unconstrained_interval() {
    let r = solve_json("unconstrained.json");
    assert_eq!(r.case, EquilibriumCase::Interior);
    assert_eq!(r.equilibria.len(), 1);
    assert!(close(r.equilibria[0], (0.25, 0.25)));
}

#[test]
fn solve_two_point_cases() {
    let c = solve_json("case_c.json");
    assert_eq!(c.case, EquilibriumCase::CaseC);
    assert_eq!(c.equilibria.len(), 4);
    assert_eq!(solve_json("case_a.json").equilibria, vec![(0.15, 0.15)]);
    assert_eq!(solve_json("case_b.json").equilibria, vec![(0.4, 0.4)]);
}

#[test]
fn solve_rejects_asymmetric_spec() {
    let out = run(&[
        "solve",
        "--config",
        scenario("asymmetric_dominant.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("contest matrix"), "{err}");
}

#[test]
fn malformed_config_reports_field_and_line() {
    let path = temp_config(
        "bad_number.json",
        "{\n  \"valuations\": 1,\n  \"impact\": { \"r\": \"abc\" },\n  \"choice_set\": [0]\n}\n",
    );
    let out = run(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("impact.r"), "{err}");
    assert!(err.contains("line 3"), "{err}");

    let path = temp_config(
        "unknown_field.json",
        "{\"valuations\": 1, \"choice_set\": [0], \"colour\": 1}",
    );
    let out = run(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));

    let out = run(&["solve", "--config", "/nonexistent/contest.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_first_set() {
    let path = scenario("asymmetric_dominant.json");
    let text = run_ok(&["matrix", "--config", path.to_str().unwrap(), "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let cell = &v["bimatrix"];
    let p1 = cell["payoff_1"][0][2].as_f64().unwrap();
    let p2 = cell["payoff_2"][0][2].as_f64().unwrap();
    assert!((p1 - 0.06471).abs() < 5e-5 && (p2 - 0.955).abs() < 5e-5);
    assert_eq!(v["nash"]["pure_equilibria"], serde_json::json!([[0, 2]]));
    assert_eq!(v["nash"]["exists_pure"], Value::Bool(true));

    let text = run_ok(&["matrix", "--config", path.to_str().unwrap()]);
    assert!(text.contains("pure equilibria  (0.18, 0.555556)"), "{text}");
    assert!(text.contains("player 2: 0.555556 strictly dominates 0.18"), "{text}");
}

#[test]
fn matrix_second_set_has_cycle() {
    let path = scenario("asymmetric_cycle.json");
    let text = run_ok(&["matrix", "--config", path.to_str().unwrap()]);
    assert!(text.contains("no pure-strategy Nash equilibrium"), "{text}");
    assert!(text.contains("best-response cycle"), "{text}");
    let json = run_ok(&["matrix", "--config", path.to_str().unwrap(), "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert!(v["nash"]["br_cycle"].as_array().is_some_and(|c| c.len() >= 2));
}

#[test]
fn matrix_single_cell() {
    let path = scenario("single_cell.json");
    let json = run_ok(&["matrix", "--config", path.to_str().unwrap(), "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["nash"]["pure_equilibria"], serde_json::json!([[0, 0]]));
}

#[test]
fn matrix_continuum_needs_grid_step() {
    let path = scenario("unconstrained.json");
    let out = run(&["matrix", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--grid-step"));
    let text = run_ok(&["matrix", "--config", path.to_str().unwrap(), "--grid-step", "0.25"]);
    assert!(text.contains("pure equilibria  (0.25, 0.25)"), "{text}");
}

#[test]
fn sweep_threshold_falls_to_zero() {
    let path = scenario("sweep.json");
    let text = run_ok(&[
        "sweep",
        "--config",
        path.to_str().unwrap(),
        "--from",
        "0.25",
        "--to",
        "0.5",
        "--steps",
        "6",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("e_high,e_hat,case"));
    let e_hat: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(e_hat.len(), 6);
    assert!((e_hat[0] - 0.25).abs() < 1e-8);
    assert!(e_hat[5].abs() < 1e-8);
    assert!(e_hat.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn sweep_beyond_half_value_has_no_threshold() {
    let path = scenario("sweep.json");
    let text = run_ok(&[
        "sweep",
        "--config",
        path.to_str().unwrap(),
        "--from",
        "0.55",
        "--to",
        "0.6",
        "--steps",
        "4",
    ]);
    assert!(text.lines().skip(1).all(|l| l.contains("no threshold")), "{text}");
}

#[test]
fn sweep_two_steps_gives_endpoints() {
    let path = scenario("sweep.json");
    let json = run_ok(&[
        "sweep",
        "--config",
        path.to_str().unwrap(),
        "--steps",
        "2",
        "--format",
        "json",
    ]);
    let rows: Vec<SweepRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].e_high, 0.25);
    assert_eq!(rows[1].e_high, 0.5);
}

#[test]
fn identity_check_passes() {
    for (v, r) in [("1", "1"), ("5", "0.5")] {
        let json = run_ok(&[
            "identity-check",
            "--v",
            v,
            "--r",
            r,
            "--samples",
            "10000",
            "--seed",
            "7",
            "--format",
            "json",
        ]);
        let report: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(report["pass"], Value::Bool(true));
    }
    let json = run_ok(&[
        "identity-check",
        "--v",
        "1",
        "--r",
        "1",
        "--samples",
        "1",
        "--force-equal",
        "--format",
        "json",
    ]);
    let report: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(report["max_residual"].as_f64(), Some(0.0));
}

#[test]
fn oracle_confirms_and_refutes() {
    for name in [
        "gap_effortless.json",
        "gap_high_effort.json",
        "case_c.json",
        "asymmetric_dominant.json",
    ] {
        let out = run(&["oracle", "--config", scenario(name).to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    for name in ["gap_effortless.json", "asymmetric_cycle.json"] {
        let out = run(&["oracle", "--config", scenario(name).to_str().unwrap(), "--corrupt"]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("REFUTED"));
    }
}

#[test]
fn json_reports_round_trip_byte_equal() {
    let sc = |n: &str| scenario(n).to_str().unwrap().to_string();
    let cases: Vec<Vec<String>> = vec![
        vec!["solve".into(), "--config".into(), sc("gap_high_effort.json")],
        vec!["solve".into(), "--config".into(), sc("case_c.json")],
        vec!["matrix".into(), "--config".into(), sc("asymmetric_cycle.json")],
        vec!["sweep".into(), "--config".into(), sc("sweep.json")],
        vec![
            "identity-check".into(),
            "--v".into(),
            "3".into(),
            "--r".into(),
            "0.7".into(),
        ],
        vec!["oracle".into(), "--config".into(), sc("case_a.json")],
    ];
    for mut args in cases {
        args.extend(["--format".to_string(), "json".to_string()]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = run_ok(&refs);
        let value: Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
    }

    let text = run_ok(&["solve", "--config", &sc("gap_effortless.json"), "--format", "json"]);
    let report: EquilibriumReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn output_is_deterministic() {
    let a = run_ok(&["identity-check", "--v", "2", "--r", "0.3", "--seed", "42"]);
    let b = run_ok(&["identity-check", "--v", "2", "--r", "0.3", "--seed", "42"]);
    assert_eq!(a, b);
    let path = scenario("asymmetric_cycle.json");
    let a = run_ok(&["matrix", "--config", path.to_str().unwrap(), "--format", "json"]);
    let b = run_ok(&["matrix", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(a, b);
}

#[test]
fn output_flag_writes_file() {
    let target = std::env::temp_dir().join(format!("contest-cli-out-{}.json", std::process::id()));
    let stdout = run_ok(&[
        "solve",
        "--config",
        scenario("case_b.json").to_str().unwrap(),
        "--format",
        "json",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    let direct = run_ok(&[
        "solve",
        "--config",
        scenario("case_b.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(written, direct);
    std::fs::remove_file(target).ok();
}

#[test]
fn golden_suite_is_fast() {
    let start = Instant::now();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    assert!(names.len() >= 10);
    for name in names {
        let path = dir.join(&name);
        let path = path.to_str().unwrap();
        let command = if name.starts_with("asymmetric") || name.starts_with("single") {
            "matrix"
        } else {
            "solve"
        };
        run_ok(&[command, "--config", path]);
        let out = run(&["oracle", "--config", path]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    assert!(start.elapsed().as_secs_f64() < 60.0, "{:?}", start.elapsed());
}

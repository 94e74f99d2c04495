use std::process::{Command, Output};

use hyperreduce::verifier::{totals_of, CaseResult, Totals};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperreduce"))
        .args(args)
        .env_remove("HYPERREDUCE_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` in {out}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn eval_log_series() {
    let o = run(&["eval", "--upper", "1,1", "--lower", "2", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = field(&stdout(&o), "value");
    assert!((v - 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn eval_negative_parameters_and_termination() {
    let o = run(&["eval", "--upper", "-2,3", "--lower", "5", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!((field(&out, "value") - 0.2).abs() < 1e-15);
    assert!(out.contains("Terminated"));
}

#[test]
fn eval_divergent_exits_3() {
    let o = run(&["eval", "--upper", "1,1,1", "--lower", "2", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diverges"));
}

#[test]
fn term_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hyperreduce"))
        .args(["eval", "--upper", "1,1", "--lower", "2", "--z", "0.9"])
        .env("HYPERREDUCE_MAX_TERMS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("MaxTermsReached"));

    let o = Command::new(env!("CARGO_BIN_EXE_hyperreduce"))
        .args(["eval", "--upper", "1", "--lower", "2", "--z", "0.5"])
        .env("HYPERREDUCE_MAX_TERMS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "--upper", "1", "--lower", "2", "--z", "0.5", "--bogus"][..],
        &["eval", "--upper", "1", "--lower", "2"],
        &["reduce", "NoSuchId", "--a", "1"],
        &["reduce", "F21Contiguous", "--b", "0.7", "--c", "1.4", "--n", "2"],
        &["reduce", "F21Contiguous", "--b", "0.7", "--c", "1.4", "--n", "2", "--d", "1", "--z", "0.3"],
        &["verify", "--cases", "0"],
        &["verify", "--format", "xml"],
        &["catalog", "--id", "NoSuchId"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reduce_fixed_argument_entry() {
    let o = run(&["reduce", "F32HalfBateman", "--a", "1", "--c", "2.5", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = field(&stdout(&o), "value");
    assert!((v - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
}

#[test]
fn reduce_with_check() {
    let o = run(&["reduce", "F21Contiguous", "--b", "0.7", "--c", "1.4", "--n", "2", "--z", "0.3", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("pass")));
    assert!(field(&out, "rel_err") <= 1e-11);
}

#[test]
fn reduce_precondition_exits_2() {
    let o = run(&["reduce", "F43Unity", "--a", "0.2", "--b", "1.0", "--c", "1.0", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_list_entry_with_negative_scalar() {
    let o = run(&["reduce", "Pp2Fp1Unity", "--a", "0.4,1.3", "--b", "-0.5", "--c", "2.0", "--n", "1", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "rel_err") <= 1e-8);
}

#[test]
fn verify_csv_rows() {
    let o = run(&["verify", "--only", "F32P0", "--cases", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("case_id,"));
    assert_eq!(lines.count(), 10);
}

#[test]
fn verify_json_round_trips_summary() {
    let dir = std::env::temp_dir().join(format!("hyperreduce-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let o = run(&[
        "verify",
        "--only",
        "F12BesselI,F22Laguerre",
        "--cases",
        "6",
        "--seed",
        "11",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    let rows: Vec<CaseResult> = lines[..12].iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary: serde_json::Value = serde_json::from_str(lines[12]).unwrap();
    let totals: Totals = serde_json::from_value(summary["summary"]["totals"].clone()).unwrap();
    assert_eq!(totals_of(&rows), totals);
    assert_eq!(totals.passed, 12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_is_seed_deterministic() {
    let args = ["verify", "--only", "Mp1FmIncBeta", "--cases", "5", "--seed", "3", "--format", "csv"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&[&args[..], &["--serial"]].concat()));
    assert_eq!(a, b);
}

#[test]
fn catalog_listing() {
    let o = run(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + hyperreduce::reductions::catalog().len());

    let o = run(&["catalog", "--id", "F12BesselI"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("modified Bessel function of the"));
}

//! End-to-end checks of the command-line interface: exit codes, output
//! formats and the state-file contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qlii(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlii"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write_fixture(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const BELL_DENSITY: &str = "dims: 2,2\nkind: density\n\
0.5+0i, 0+0i, 0+0i, 0.5+0i\n\
0+0i, 0+0i, 0+0i, 0+0i\n\
0+0i, 0+0i, 0+0i, 0+0i\n\
0.5+0i, 0+0i, 0+0i, 0.5+0i\n";

const PRODUCT_DENSITY: &str = "dims: 2,2\nkind: density\n\
0.28+0i, 0+0i, 0.21+0i, 0+0i\n\
0+0i, 0.12+0i, 0+0i, 0.09+0i\n\
0.21+0i, 0+0i, 0.42+0i, 0+0i\n\
0+0i, 0.09+0i, 0+0i, 0.18+0i\n";

const NON_PSD_DENSITY: &str = "dims: 2,2\nkind: density\n\
0.6+0i, 0+0i, 0+0i, 0.5+0i\n\
0+0i, 0+0i, 0+0i, 0+0i\n\
0+0i, 0+0i, 0+0i, 0+0i\n\
0.5+0i, 0+0i, 0+0i, 0.4+0i\n";

const PRODUCT_PURE_TRIPARTITE: &str =
    "dims: 2,2,2\nkind: pure\n1+0i, 0+0i, 0+0i, 0+0i, 0+0i, 0+0i, 0+0i, 0+0i\n";

fn parse_report(text: &str) -> Vec<(String, f64)> {
    text.lines()
        .map(|l| {
            let (k, v) = l.split_once('=').expect("key=value");
            (k.to_string(), v.parse::<f64>().expect("float value"))
        })
        .collect()
}

#[test]
fn measure_bell_state() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_fixture(dir.path(), "bell.txt", BELL_DENSITY);
    let out = qlii(&["measure", "--state", state.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));

    let report = parse_report(&stdout(&out));
    let keys: Vec<&str> = report.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(
        keys,
        [
            "s_a",
            "s_b",
            "s_ab",
            "mutual_info",
            "accessible",
            "discord",
            "cond_entropy",
            "cond_entropy_measured",
            "eof",
            "theta_opt",
            "phi_opt"
        ]
    );
    let value = |k: &str| report.iter().find(|(key, _)| key == k).unwrap().1;
    assert!((value("mutual_info") - 2.0).abs() < 1e-9);
    assert!((value("discord") - 1.0).abs() < 1e-9);
    assert!((value("eof") - 1.0).abs() < 1e-9);
    assert!((value("cond_entropy") + 1.0).abs() < 1e-9);
}

#[test]
fn measure_product_state_is_all_zero_correlations() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_fixture(dir.path(), "product.txt", PRODUCT_DENSITY);
    let out = qlii(&["measure", "--state", state.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = parse_report(&stdout(&out));
    let value = |k: &str| report.iter().find(|(key, _)| key == k).unwrap().1;
    assert!(value("mutual_info").abs() < 1e-9);
    assert!(value("accessible").abs() < 1e-9);
    assert!(value("discord").abs() < 1e-9);
    assert!(value("eof").abs() < 1e-9);
}

#[test]
fn measure_rejects_non_psd_input_naming_the_violation() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_fixture(dir.path(), "bad.txt", NON_PSD_DENSITY);
    let out = qlii(&["measure", "--state", state.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("eigenvalue"), "{}", stderr(&out));
}

#[test]
fn measure_accepts_pure_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let s = 1.0 / 2.0_f64.sqrt();
    let contents = format!("dims: 2,2\nkind: pure\n{s}+0i, 0+0i, 0+0i, {s}+0i\n");
    let state = write_fixture(dir.path(), "bell_pure.txt", &contents);
    let out = qlii(&["measure", "--state", state.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = parse_report(&stdout(&out));
    let value = |k: &str| report.iter().find(|(key, _)| key == k).unwrap().1;
    assert!((value("mutual_info") - 2.0).abs() < 1e-9);
    assert!((value("eof") - 1.0).abs() < 1e-9);
}

#[test]
fn measure_rejects_out_of_range_measured_index() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_fixture(dir.path(), "bell.txt", BELL_DENSITY);
    let out = qlii(&[
        "measure",
        "--state",
        state.to_str().unwrap(),
        "--measured",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn measure_rejects_garbage_file() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_fixture(dir.path(), "garbage.txt", "not a state\n");
    let out = qlii(&["measure", "--state", state.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_zero_trials_is_a_config_error() {
    let out = qlii(&["verify", "--trials", "0", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no trials"), "{}", stderr(&out));
}

#[test]
fn verify_rejects_unroutable_dims() {
    let out = qlii(&["verify", "--trials", "1", "--dims", "3,3,3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qlii(&["verify", "--trials", "1", "--dims", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_product_fixture_has_zero_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_fixture(dir.path(), "prod.txt", PRODUCT_PURE_TRIPARTITE);
    let csv = dir.path().join("out.csv");
    let out = qlii(&[
        "verify",
        "--trials",
        "1",
        "--seed",
        "7",
        "--state",
        state.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "trial,identity,lhs,rhs,residual,route"
    );
    let mut saw_pure_cond = false;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6, "line '{line}'");
        assert_eq!(fields[0], "0");
        let residual: f64 = fields[4].parse().unwrap();
        assert!(residual.abs() < 1e-9, "line '{line}'");
        saw_pure_cond |= fields[1] == "pure_cond";
    }
    assert!(
        saw_pure_cond,
        "pure pair fixture must include the pure_cond identity"
    );
}

#[test]
fn verify_small_run_passes_and_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("verify.csv");
    let out = qlii(&[
        "verify",
        "--trials",
        "2",
        "--seed",
        "42",
        "--tol",
        "2e-3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    // header + 2 trials x 14 identities (no pure_cond on generic states)
    assert_eq!(text.lines().count(), 1 + 2 * 14);
    for line in text.lines().skip(1) {
        assert_eq!(line.split(',').count(), 6, "line '{line}'");
    }
}

#[test]
fn verify_exits_one_when_the_gate_is_impossible() {
    let out = qlii(&["verify", "--trials", "1", "--seed", "42", "--tol", "1e-18"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("worst offender"), "{}", stderr(&out));
}

#[test]
fn esd_rejects_degenerate_configs() {
    let out = qlii(&["esd", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qlii(&["esd", "--alpha-sq", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qlii(&["esd", "--alpha-sq", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn esd_short_sweep_has_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("esd.csv");
    let out = qlii(&["esd", "--steps", "5", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,eof_ab,avg_lii_ab,balance_sum,concurrence_ab,eab2_residual"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse::<f64>().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[4][0], 1.0);
    // monotone EOF decay, zero at full damping
    for w in rows.windows(2) {
        assert!(w[1][1] <= w[0][1] + 1e-9);
    }
    assert!(rows[4][1].abs() < 1e-9);
}

#[test]
fn identical_configs_produce_byte_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = qlii(&[
            "verify",
            "--trials",
            "3",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

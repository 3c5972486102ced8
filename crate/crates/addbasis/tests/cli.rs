//! End-to-end tests of the `addbasis` binary: JSON I/O shapes and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_addbasis"))
}

fn write(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn solve_reports_exact_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "instance.json",
        r#"{"A": ["0", "8", "12", "20", "32"], "k": 2, "domain": "N"}"#,
    );
    let out = run(bin().arg("solve").arg("--input").arg(&input));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["size"], 4);
    assert_eq!(v["results"]["exact"], true);
    assert!(v["results"]["basis"].as_array().unwrap().len() == 4);
    assert!(v["input_digest"].as_str().unwrap().len() == 64);
    assert!(v["timings_ms"]["solve"].is_number());
}

#[test]
fn solve_budget_exhaustion_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "instance.json",
        r#"{"A": ["0", "8", "12", "20", "32"], "k": 2, "domain": "N"}"#,
    );
    let out = run(bin()
        .arg("solve")
        .arg("--input")
        .arg(&input)
        .arg("--node-budget")
        .arg("1"));
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn solve_rejects_malformed_json_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.json", r#"{"A": ["0", "oops"], "k": 2}"#);
    let out = run(bin().arg("solve").arg("--input").arg(&input));
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn construct_round_emits_certificates_and_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "basis.json", r#"["1/2", "3/2", "7/3"]"#);
    let out = run(bin()
        .arg("construct")
        .arg("round")
        .arg("--input")
        .arg(&input)
        .arg("--k")
        .arg("2")
        .arg("--emit-certificates"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["covered"], true);
    assert!(v["results"]["certificates"].is_object());
    let ratio = v["bound_ratios"]["round_2n"].as_f64().unwrap();
    assert!(ratio > 0.0 && ratio <= 1.0);
}

#[test]
fn construct_dyadic_covers_nonnegative_double_sums() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "basis.json", r#"["-5", "-2", "3", "7"]"#);
    let out = run(bin()
        .arg("construct")
        .arg("dyadic")
        .arg("--input")
        .arg(&input));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["covered"], true);
    assert!(v["results"]["size"].as_u64().unwrap() >= 1);
}

#[test]
fn construct_higher_writes_json_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "basis.json", r#"["1/2", "1"]"#);
    let report = dir.path().join("report.json");
    let out = run(bin()
        .arg("--json-out")
        .arg(&report)
        .arg("construct")
        .arg("higher")
        .arg("--input")
        .arg(&input)
        .arg("--k")
        .arg("3"));
    assert_eq!(out.status.code(), Some(0));
    let saved: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(saved["results"]["covered"], true);
    assert!(saved["bound_ratios"]["higher_2n3klog2k"].as_f64().unwrap() <= 1.0);
}

#[test]
fn verify_distinguishes_cover_from_gap() {
    let dir = tempfile::tempdir().unwrap();
    let basis = write(dir.path(), "b.json", r#"["-4", "4", "-16", "16"]"#);
    let targets = write(dir.path(), "a.json", r#"["0", "8", "12", "20", "32"]"#);
    let ok = run(bin()
        .arg("verify")
        .arg("--basis")
        .arg(&basis)
        .arg("--targets")
        .arg(&targets)
        .arg("--k")
        .arg("2"));
    assert_eq!(ok.status.code(), Some(0));
    let v = json_of(&ok);
    assert_eq!(v["results"]["covered"], true);
    assert_eq!(v["results"]["failing"].as_array().unwrap().len(), 0);

    let small = write(dir.path(), "small.json", r#"["4", "16"]"#);
    let bad = run(bin()
        .arg("verify")
        .arg("--basis")
        .arg(&small)
        .arg("--targets")
        .arg(&targets)
        .arg("--k")
        .arg("2"));
    assert_eq!(bad.status.code(), Some(1));
    let v = json_of(&bad);
    assert_eq!(v["results"]["covered"], false);
    assert!(v["results"]["failing"].as_array().unwrap().contains(&"0".into()));
}

#[test]
fn gen_power_family_is_reproducible_json() {
    let out = run(bin().arg("gen").arg("power-family").arg("--n").arg("2"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(
        v["results"]["instance"]["A"],
        serde_json::json!(["0", "8", "12", "20", "32"])
    );
    assert_eq!(v["results"]["instance"]["k"], 2);
}

#[test]
fn gen_random_basis_is_seed_deterministic() {
    let args = |seed: &str| {
        run(bin()
            .arg("--seed")
            .arg(seed)
            .arg("gen")
            .arg("random-basis")
            .arg("--n")
            .arg("5")
            .arg("--denom")
            .arg("7")
            .arg("--mag")
            .arg("3"))
    };
    let a = json_of(&args("42"));
    let b = json_of(&args("42"));
    let c = json_of(&args("43"));
    assert_eq!(a["results"]["basis"], b["results"]["basis"]);
    assert_ne!(a["results"]["basis"], c["results"]["basis"]);
}

#[test]
fn probe_vector_cover_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // B_0 = {e_1, e_2}, B_1 = {e_1, e_2}: covers both targets for n=k=2
    let good = write(
        dir.path(),
        "good.json",
        r#"{"n": 2, "k": 2, "parts": [[["1","0"],["0","1"]],[["1","0"],["0","1"]]]}"#,
    );
    let out = run(bin().arg("probe").arg("vector-cover").arg("--input").arg(&good));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"]["covered"], true);

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"n": 2, "k": 2, "parts": [[["1","0"]],[["1","0"]]]}"#,
    );
    let out = run(bin().arg("probe").arg("vector-cover").arg("--input").arg(&bad));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["results"]["covered"], false);
}

#[test]
fn probe_conjecture1_finds_size_2n_family() {
    let out = run(bin()
        .arg("probe")
        .arg("conjecture1")
        .arg("--n")
        .arg("2")
        .arg("--sizes")
        .arg("2,2"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["results"]["family"].is_object());
    assert!(v["results"]["grid_values"].is_array());
}

#[test]
fn probe_conjecture1_budget_exhaustion_exits_4() {
    let out = run(bin()
        .arg("probe")
        .arg("conjecture1")
        .arg("--n")
        .arg("3")
        .arg("--sizes")
        .arg("3,3")
        .arg("--budget")
        .arg("5"));
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn probe_lemma2_passes() {
    let out = run(bin().arg("probe").arg("lemma2"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"]["holds"], true);
}

#[test]
fn sweep_writes_csv_and_respects_cell_cap() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = run(bin()
        .arg("--csv-out")
        .arg(&csv)
        .arg("sweep")
        .arg("--family")
        .arg("dyadic")
        .arg("--n")
        .arg("4,8"));
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,n,k,construction,size,paper_bound,ratio,covered,millis"
    );
    assert_eq!(lines.count(), 2);

    let capped = run(bin()
        .arg("sweep")
        .arg("--family")
        .arg("higher")
        .arg("--n")
        .arg("2,3")
        .arg("--k")
        .arg("2,3")
        .arg("--cell-cap")
        .arg("3"));
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn zero_threads_is_a_config_error() {
    let out = run(bin().arg("--threads").arg("0").arg("probe").arg("lemma2"));
    assert_eq!(out.status.code(), Some(3));
}

use std::process::{Command, Output};

use serde_json::Value;

fn recurlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recurlab"))
        .args(args)
        .env_remove("RECURLAB_DIGITS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let o = recurlab(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn csv_records(text: &[u8]) -> Vec<csv::StringRecord> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text)
        .records()
        .collect::<Result<_, _>>()
        .expect("valid CSV")
}

#[test]
fn padovan_prefix_as_csv() {
    let o = recurlab(&["seq", "--rule", "u[n-2]+u[n-3]", "--init", "1,1,1", "--count", "10", "--format", "csv"]);
    assert!(o.status.success());
    let mut want = vec![1u64, 1, 1];
    while want.len() < 10 {
        let n = want.len();
        want.push(want[n - 2] + want[n - 3]);
    }
    let got: Vec<u64> = csv_records(&o.stdout).iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(got, want);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# version="));
    assert!(text.contains("\nn,term\n"));
}

#[test]
fn scan_finds_the_first_transition() {
    let r = json(&["dynamics", "scan", "--lags", "3,1", "--a", "10:16:0.002", "--refine", "1e-4"]);
    let first = &r["result"]["transitions"][0];
    let a = first["a"].as_f64().unwrap();
    assert!((a - 10.415).abs() < 0.05, "{a}");
    assert_eq!(first["from"]["kind"], "fixed");
    assert!(first["width"].as_f64().unwrap() < 1e-4);
}

#[test]
fn third_identity_passes_everywhere() {
    let r = json(&["identities", "verify", "--id", "III", "--j", "1:5", "--n", "2:20"]);
    assert_eq!(r["result"]["all_pass"], true);
    let ids = r["result"]["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 1);
    assert_eq!(ids[0]["total"], 5 * 19);
    assert_eq!(ids[0]["failures"], 0);
}

#[test]
fn reports_echo_their_config() {
    let r = json(&["--digits", "40", "psi", "--k", "2", "--m", "3"]);
    assert_eq!(r["precision_digits"], 40);
    assert!(r["version"].is_string());
    assert_eq!(r["config"]["command"]["psi"]["k"], 2);
    // (x³ − x² − 1)(1 + x + x² + x³)
    assert_eq!(r["result"]["polynomial"], "x^6 - x^3 - 2x^2 - x - 1");
}

#[test]
fn environment_sets_default_precision() {
    let o = Command::new(env!("CARGO_BIN_EXE_recurlab"))
        .args(["roots", "--poly", "1,-1,-1"])
        .env("RECURLAB_DIGITS", "35")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["precision_digits"], 35);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["dynamics", "scan", "--lags", "3,2", "--a", "11:12:0.05", "--refine", "1e-3"];
    assert_eq!(recurlab(&args).stdout, recurlab(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(recurlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(recurlab(&["seq", "--init", "1"]).status.code(), Some(2));
    assert_eq!(recurlab(&["dynamics", "scan", "--a", "16:10:0.1"]).status.code(), Some(2));
    assert_eq!(recurlab(&["seq", "--rule", "u[n-1]", "--init", "x"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    let o = recurlab(&["seq", "--rule", "u[n-0]", "--init", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(recurlab(&["words", "permA", "--n", "9"]).status.code(), Some(1));
    assert_eq!(recurlab(&["identities", "verify", "--id", "NOPE"]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("recurlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("delannoy.csv");
    let o = recurlab(&["triangles", "delannoy", "--size", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let rows = csv_records(&std::fs::read(&path).unwrap());
    let last: Vec<&str> = rows[4].iter().skip(1).collect();
    assert_eq!(last, ["1", "9", "41", "129", "321"]);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn word_system_from_flags() {
    let o = recurlab(&["words", "gen", "--init", "A,AB,CA", "--lags", "3,2", "--count", "9", "--format", "csv"]);
    let words: Vec<String> = csv_records(&o.stdout).iter().map(|r| r[2].to_string()).collect();
    assert_eq!(words, ["A", "AB", "CA", "AAB", "ABCA", "CAAAB", "AABABCA", "ABCACAAAB", "CAAABAABABCA"]);
}

#[test]
fn collapse_at_a_single_parameter() {
    let r = json(&["dynamics", "collapse", "--lags", "3,1", "--a", "15.7"]);
    assert!(r["result"][0]["transient"].as_u64().is_some());
}

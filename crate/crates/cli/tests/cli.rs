use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_virasoro"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn kac_det_level_four() {
    let o = run(&["kac-det", "--level", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("det = (1/2)*C^2*(5*C + 22)"), "{text}");
    assert!(text.contains("singular charges: -22/5, 0"), "{text}");
}

#[test]
fn kac_det_level_zero() {
    let v = json(&["kac-det", "--level", "0"]);
    assert_eq!(v["determinant"], "1");
    assert_eq!(v["dimension"], 1);
}

#[test]
fn kac_det_level_six_factor_list() {
    let v = json(&["kac-det", "--level", "6"]);
    let factors: Vec<(String, u64)> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["factor"].as_str().unwrap().to_string(), f["multiplicity"].as_u64().unwrap()))
        .collect();
    let expected = [("7*C + 68", 1), ("5*C + 22", 2), ("C", 4), ("2*C - 1", 1)];
    assert_eq!(factors.len(), expected.len());
    for (f, m) in expected {
        assert!(factors.contains(&(f.to_string(), m)), "{factors:?}");
    }
    assert_eq!(v["constant"], "3/4");
    assert_eq!(v["singular_charges"], serde_json::json!(["-68/7", "-22/5", "0", "1/2"]));
}

#[test]
fn casimir_examples() {
    let text = stdout(&run(&["casimir", "--weight", "1", "--level", "4"]));
    assert!(text.contains("L_{-2}L_{-2}1: -12*d/(C*(5*C + 22))"), "{text}");
    assert!(text.contains("L_{-4}1: -3*d*(C + 2)/(C*(5*C + 22))"), "{text}");

    let v = json(&["casimir", "--weight", "1", "--level", "1"]);
    assert_eq!(v["zero"], true);

    let v = json(&["casimir", "--weight", "2", "--level", "2"]);
    assert_eq!(v["terms"][0]["word"], "L_{-2}1");
    assert_eq!(v["terms"][0]["factored"], "4*d2/C");
}

#[test]
fn derive_weight_three_matches_closed_form() {
    let v = json(&["derive", "--weight", "3"]);
    let num = v["forms"][0]["numerator"].as_str().unwrap();
    assert!(num.ends_with("*C*(11*C + 232)*(3*C + 46)*(7*C + 68)*(5*C + 22)*(5*C + 3)*(2*C - 1)"), "{num}");
    let den = v["forms"][0]["denominator"].as_str().unwrap();
    assert!(den.contains("25*C^6 - 3315*C^5 + 157468*C^4 - 3018356*C^3 + 13216544*C^2 + 146156224*C + 992256"));
}

#[test]
fn enumerate_weight_one_has_21_rows() {
    let v = json(&["enumerate", "--weight", "1"]);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 21);
}

#[test]
fn verify_table_two_passes() {
    let o = run(&["verify", "--table", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Table 2: pass"));
}

#[test]
fn constraint_at_level_eight_leaves_24() {
    let v = json(&["constraint", "--weight", "2", "--level", "8"]);
    assert_eq!(v["admissible"], serde_json::json!(["24"]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["kac-det"][..],
        &["kac-det", "--level", "13"],
        &["kac-det", "--level", "3", "--max-level", "1"],
        &["kac-det", "--level", "4", "--bogus"],
        &["casimir", "--weight", "4", "--level", "2"],
        &["enumerate", "--weight", "3"],
        &["constraint", "--weight", "1", "--level", "2"],
        &["verify", "--table", "5"],
        &["verify"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failing_acceptance_exits_one_and_names_the_criterion() {
    // The descent check on the weight-one level-four vector fails by sign.
    let o = run(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("criterion 3"), "{err}");
    assert!(stdout(&o).contains("11 of 12 criteria pass"));
}

#[test]
fn json_is_deterministic_with_sorted_keys() {
    let a = run(&["kac-det", "--level", "8", "--format", "json"]);
    let b = run(&["kac-det", "--level", "8", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let text = stdout(&a);
    assert!(text.find("\"basis\"").unwrap() < text.find("\"constant\"").unwrap());
}

fn cache_files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

#[test]
fn cache_gives_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    for args in [
        &["kac-det", "--level", "8"][..],
        &["gram", "--level", "6"],
        &["casimir", "--weight", "2", "--level", "6"],
        &["zero-mode", "--weight", "1", "--level", "6"],
    ] {
        for format in ["text", "json"] {
            let mut plain = args.to_vec();
            plain.extend(["--format", format]);
            let mut cached = plain.clone();
            cached.extend(["--cache-dir", cache]);
            let reference = run(&plain);
            let cold = run(&cached);
            let warm = run(&cached);
            assert!(reference.status.success());
            assert_eq!(reference.stdout, cold.stdout, "{args:?} cold");
            assert_eq!(reference.stdout, warm.stdout, "{args:?} warm");
        }
    }
    assert_eq!(
        cache_files(dir.path()),
        [
            "casimir-h2-n6.json",
            "gram-n6.json",
            "gram-n8.json",
            "zero-mode-h1-n6.json"
        ]
    );
}

#[test]
fn stale_cache_entries_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let file = dir.path().join("gram-n4.json");
    fs::write(
        &file,
        r#"{"version":"0.0.0+0","kind":"gram","weight":null,"level":4,"payload":{"bogus":true}}"#,
    )
    .unwrap();
    let reference = run(&["kac-det", "--level", "4"]);
    let cached = run(&["kac-det", "--level", "4", "--cache-dir", cache]);
    assert_eq!(reference.stdout, cached.stdout);
    let rewritten: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_ne!(rewritten["version"], "0.0.0+0");

    fs::write(&file, "not json").unwrap();
    let cached = run(&["kac-det", "--level", "4", "--cache-dir", cache]);
    assert_eq!(reference.stdout, cached.stdout);
}

#[test]
fn report_runs_through_level_eight() {
    let v = json(&["report", "--max-level", "8"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["enumerations"]["d"]["solutions"].as_array().unwrap().len(), 21);
    assert_eq!(v["scans"][1]["surviving"], serde_json::json!(["24"]));
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lssp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lssp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = lssp(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn error_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|_| panic!("not JSON: {text}"))
}

#[test]
fn gen_random_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        ok(&["gen-random", "-m", "100", "-N", "10", "--npct", "0.15", "--seed", "7", "-o", p.to_str().unwrap()]);
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("# gen-random"));
    // 100 rotations, 10 measurements, one header
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 111);
}

#[test]
fn serial_schedule_reports_en_equal_ub() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.txt");
    ok(&["gen-random", "-m", "40", "-N", "6", "--npct", "0.4", "--seed", "1", "-o", c.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&ok(&["schedule", c.to_str().unwrap(), "--rule", "serial"])).unwrap();
    assert_eq!(v["metrics"]["EN"], v["metrics"]["UB"]);
    assert_eq!(v["metrics"]["UB"], 46);
    assert_eq!(v["time_steps"].as_array().unwrap().len(), 46);
}

#[test]
fn schedule_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.txt");
    ok(&["gen-random", "-m", "60", "-N", "8", "--npct", "0.3", "--seed", "3", "-o", c.to_str().unwrap()]);
    let args = [
        "schedule",
        c.to_str().unwrap(),
        "--rule",
        "general",
        "--order-seed",
        "5",
        "--assign",
        "random:9",
        "--omit-timing",
    ];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn layout_flags_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.txt", "qubits 3\npi/8 XYZ\npi/8 ZII\nM ZZZ\n");
    let json = r#"{"style":"compact","aisles":1,"patches_per_aisle":2,"n_storage":2,"n_ancillary":0}"#;
    let lj = write(dir.path(), "layout.json", json);
    let from_flags = ok(&[
        "schedule", &c, "--style", "compact", "--aisles", "1", "--patches", "2", "--n-storage", "2", "--omit-timing",
    ]);
    assert_eq!(from_flags, ok(&["schedule", &c, "--layout", json, "--omit-timing"]));
    assert_eq!(from_flags, ok(&["schedule", &c, "--layout", &lj, "--omit-timing"]));
}

#[test]
fn convert_and_transpile_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "qubits 2\nH 0\nCNOT 0 1\nT 1\nS 0\nT 0\n");
    let converted = ok(&["convert", &g]);
    assert!(converted.starts_with("qubits 2\n"));
    assert_eq!(converted.lines().count(), 10);
    let r = write(dir.path(), "r.txt", &converted);
    let tab = dir.path().join("tab.json");
    let out = ok(&["transpile", &r, "--tableau", tab.to_str().unwrap()]);
    // only π/8 rotations survive, and transpiling the gate file directly agrees
    assert!(out.lines().skip(1).all(|l| l.contains("pi/8")));
    assert_eq!(out, ok(&["transpile", &g]));
    let t: Value = serde_json::from_str(&fs::read_to_string(tab).unwrap()).unwrap();
    assert_eq!(t["x_images"].as_array().unwrap().len(), 2);
    let fix = ok(&["transpile", &g, "--fixpoint"]);
    assert!(fix.lines().count() <= out.lines().count());
}

#[test]
fn compare_reports_both_step_counts() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "qubits 2\nH 0\nCNOT 0 1\nT 1\nS 0\nT 0\nH 1\nT 1\n");
    let v: Value = serde_json::from_str(&ok(&["compare", &g, "--omit-timing"])).unwrap();
    let before = v["before"]["metrics"]["EN"].as_f64().unwrap();
    let after = v["after"]["metrics"]["EN"].as_f64().unwrap();
    let pct = v["EN_reduction_pct"].as_f64().unwrap();
    assert!((pct - 100.0 * (before - after) / before).abs() < 1e-9);
    assert!(after < before);
}

#[test]
fn report_csv_shape() {
    let out = ok(&[
        "report", "-m", "50", "-N", "6,8", "--npct", "0.3", "--seeds", "2", "--threads", "2", "--omit-timing",
    ]);
    let mut r = csv::Reader::from_reader(out.as_bytes());
    let headers = r.headers().unwrap().clone();
    assert_eq!(&headers[6], "EN");
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2 * 2 * 3);
    for row in &rows {
        let en: usize = row[6].parse().unwrap();
        let lb: usize = row[7].parse().unwrap();
        let ub: usize = row[8].parse().unwrap();
        assert!(lb <= en && en <= ub);
        if &row[4] == "serial" {
            assert_eq!(en, ub);
        }
    }
    let again = ok(&[
        "report", "-m", "50", "-N", "6,8", "--npct", "0.3", "--seeds", "2", "--threads", "1", "--omit-timing",
    ]);
    assert_eq!(out, again);
}

#[test]
fn errors_have_distinct_exit_codes_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "qubits 2\npi/8 XYZ\n");
    let wide = write(dir.path(), "wide.txt", "qubits 4\npi/8 XYZI\n");
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["schedule", &bad], 3, "parse"),
        (vec!["schedule", &wide, "--aisles", "1", "--patches", "1"], 7, "capacity"),
        (vec!["schedule", &wide, "--n-storage", "0"], 8, "scheduling"),
        (vec!["gen-random", "-m", "0", "-N", "3", "--npct", "0.5"], 4, "validation"),
        (vec!["schedule", "/definitely/not/here"], 11, "io"),
    ];
    for (args, code, kind) in cases {
        let out = lssp(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let v = error_json(&out);
        assert_eq!(v["error"], kind, "{args:?}");
        assert!(v["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
    assert_eq!(lssp(&["schedule", &bad, "--bogus"]).status.code(), Some(2));
}

#[test]
fn hidden_oracle_matches_greedy_on_a_chain() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.txt", "qubits 2\npi/8 XI\npi/8 ZI\npi/8 IZ\n");
    let v: Value = serde_json::from_str(&ok(&["oracle", &c])).unwrap();
    assert_eq!(v["exact_steps"], 2);
    assert!(v["greedy_EN"].as_u64().unwrap() >= 2);
}

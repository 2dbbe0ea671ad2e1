use std::io::Write;
use std::process::{Command, Output};

fn eprb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eprb")).args(args).output().expect("spawn eprb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn qm_prob_prints_nine_significant_digits() {
    let o = eprb(&["qm", "prob", "--theta", "pi/4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("P(theta) = 0.853553391"), "{s}");
    assert!(s.contains("P'(theta) = 0.146446609"), "{s}");
}

#[test]
fn joint_csv_has_header_and_one_row() {
    let o = eprb(&["--format", "csv", "qm", "joint", "--theta", "pi/3"]);
    let s = stdout(&o);
    let lines: Vec<_> = s.lines().collect();
    assert_eq!(lines, ["theta,p_pp,p_pm,p_mp,p_mm", "1.04719755,0.125000000,0.375000000,0.375000000,0.125000000"]);
}

#[test]
fn sample_csv_rows_match_samples() {
    let o = eprb(&["--samples", "50", "--seed", "3", "sample", "singlet", "--theta", "0", "--csv"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("index,outcome1,outcome2"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 50);
    // At θ = 0 the pair is perfectly anticorrelated.
    for r in rows {
        let f: Vec<i32> = r.split(',').skip(1).map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[0], -f[1]);
    }
}

#[test]
fn bell_report_schema_and_violation_exit() {
    let args = ["--samples", "20000", "bell", "check", "--inequality", "star", "--model", "qm",
        "--angles", "pi/4,pi/4,pi/4", "--mode", "mc"];
    let o = eprb(&args);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["inequality", "angles", "lhs", "rhs", "slack", "verdict", "mode", "stderr", "model", "config"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verdict"], "violated");
    assert_eq!(v["mode"], "monte-carlo");
    assert_eq!(v["config"]["samples"], 20000);

    let mut strict = args.to_vec();
    strict.push("--fail-on-violation");
    assert_eq!(eprb(&strict).status.code(), Some(4));
}

#[test]
fn tube_exact_report_omits_stderr() {
    let o = eprb(&["bell", "check", "--inequality", "doublestar", "--model", "tube4",
        "--angles", "pi/4,pi/4", "--mode", "exact", "--fail-on-violation"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "satisfied");
    assert!(v.get("stderr").is_none());
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("eprb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::File::create(&path).unwrap().write_all(br#"{"seed": 11, "samples": 5000}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let base = ["bell", "check", "--inequality", "star", "--model", "tube4", "--angles", "pi/4,pi/4,pi/4", "--mode", "mc"];

    let mut a = vec!["--config", cfg];
    a.extend(base);
    let v: serde_json::Value = serde_json::from_slice(&eprb(&a).stdout).unwrap();
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["config"]["samples"], 5000);

    let mut b = vec!["--config", cfg, "--seed", "12"];
    b.extend(base);
    let v: serde_json::Value = serde_json::from_slice(&eprb(&b).stdout).unwrap();
    assert_eq!(v["config"]["seed"], 12);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(eprb(&["qm", "frobnicate"]).status.code(), Some(2));
    assert_eq!(eprb(&["bell", "check", "--inequality", "star", "--model", "qm", "--angles", "pi/4"]).status.code(), Some(2));
    assert_eq!(eprb(&["tube", "faces", "--alpha", "0.25"]).status.code(), Some(3));
    assert_eq!(eprb(&["oval", "measure", "--beta", "0.8", "--face", "9"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_spans_zero_to_pi() {
    let o = eprb(&["sweep", "--curve", "triangle", "--step", "pi/8", "--csv"]);
    let s = stdout(&o);
    let rows: Vec<_> = s.lines().skip(1).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows[8].starts_with("3.14159265,1.00000000,1.00000000,"));
}

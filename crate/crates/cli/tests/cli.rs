use std::path::PathBuf;
use std::process::{Command, Output};

use syzdim::checker::CheckReport;

fn syzdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzdim"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Writes an instance file into the temp dir and returns its path.
fn temp_instance(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("syzdim-{}-{name}.inst", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn resolve_prints_betti_numbers() {
    let o = syzdim(&["resolve", "@embedded", "--window", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("betti: 1 1 1 2 3"), "{out}");
    assert!(out.contains("terminated: no"));
}

#[test]
fn depth_zero_over_q_has_two_generators_in_degree_three() {
    let o = syzdim(&["resolve", "@depth-zero", "--field", "q", "--window", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("betti: 3 1 1 2"), "{}", stdout(&o));
}

#[test]
fn free_module_terminates() {
    let path = temp_instance("free", "field = 0\nvariables = [\"x\"]\nmodule = [[]]\n");
    let o = syzdim(&["resolve", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("betti: 1 0"), "{out}");
    assert!(out.contains("terminated: yes"));
}

#[test]
fn check_reports_witnesses() {
    let o = syzdim(&["check", "@matfac"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("β even = β odd = 2"), "{}", stdout(&o));

    let o = syzdim(&["check", "@shrink", "--claims", "shrink"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("p = (x, z)"), "{out}");
    assert!(out.contains("ht = 1"));
    assert!(!out.contains("theorem-main"));
}

#[test]
fn machine_output_round_trips() {
    let o = syzdim(&["check", "@embedded", "--out", "machine"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["kind"], "check");
    let report: CheckReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert_eq!(report.label, "embedded");
    assert_eq!(report.betti.get(4), Some(3));
    assert!(!report.has_failure());
}

#[test]
fn corpus_has_no_failures() {
    let o = syzdim(&["corpus", "--seed", "7", "--count", "20"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn oracle_compare() {
    let o = syzdim(&["oracle-compare", "@embedded", "-D", "5", "-H", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("equal"), "{}", stdout(&o));

    // the Koszul complex on x, y: graded Betti numbers 1, 2, 1
    let path = temp_instance(
        "koszul",
        "field = 0\nvariables = [\"x\", \"y\"]\nmodule = [[\"x\", \"y\"]]\n",
    );
    let o = syzdim(&[
        "oracle-compare",
        path.to_str().unwrap(),
        "-D",
        "3",
        "-H",
        "3",
        "--out",
        "machine",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let totals: Vec<u64> = v["comparison"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["oracle"].as_u64().unwrap())
        .collect();
    assert_eq!(totals, [1, 2, 1, 0]);

    let o = syzdim(&["oracle-compare", "@depth-zero", "-D", "1"]);
    assert_eq!(code(&o), 4);
    assert!(
        stdout(&o).contains("uncertified")
            || String::from_utf8_lossy(&o.stderr).contains("uncertified")
    );
}

#[test]
fn error_exit_codes() {
    let path = temp_instance("broken", "field = \n");
    let o = syzdim(&["resolve", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&o), 1);

    let o = Command::new(env!("CARGO_BIN_EXE_syzdim"))
        .args(["resolve", "@depth-zero"])
        .env("SYZDIM_PAIR_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("pair_cap"));
}

#[test]
fn lists_builtin_instances() {
    let o = syzdim(&["list"]);
    assert_eq!(code(&o), 0);
    for name in ["embedded", "matfac", "depth-zero", "shrink"] {
        assert!(stdout(&o).contains(name));
    }
    let o = syzdim(&["show", "@shrink"]);
    assert!(stdout(&o).contains("y*z"));
}

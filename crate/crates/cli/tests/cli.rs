use std::process::{Command, Output};

fn framing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framing")).args(args).output().expect("run framing")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn anomaly_json_follows_the_report_schema() {
    let o = framing(&["anomaly", "--dim", "3", "--target", "cs:A1", "--inner", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["n", "mode", "cells", "total", "verdict", "notes", "tool_version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["mode"], "inner");
    assert_eq!(v["total"], 1);
    assert_eq!(v["verdict"], "potential anomaly");
    assert_eq!(v["cells"][0]["labels"][0], "η ⊗ 1");
    let report = framing_core::anomaly::AnomalyReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.n, 3);
}

#[test]
fn anomaly_text_table() {
    let o = framing(&["anomaly", "--dim", "6", "--target", "bf:A1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("η₁ ⊗ x1"), "{text}");
    assert!(text.contains("total 1: potential anomaly"), "{text}");
    let o = framing(&["anomaly", "--dim", "3", "--target", "bf:A1"]);
    assert!(stdout(&o).contains("total 0: vanishes"));
}

#[test]
fn betti_and_file_targets() {
    let o = framing(&["anomaly", "--dim", "6", "--target", "betti:3=1,7=1,10=1"]);
    assert!(stdout(&o).contains("total 1"), "{}", stdout(&o));
    let dir = std::env::temp_dir().join(format!("framing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("so3.json");
    let so3 = framing_core::lie::LieFile::from_lie(&framing_core::lie::build_so(3).unwrap());
    std::fs::write(&path, serde_json::to_string(&so3).unwrap()).unwrap();
    let target = format!("file:{}", path.display());
    let o = framing(&["anomaly", "--dim", "3", "--target", &target, "--inner", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 1);
    let o = framing(&["cohomology", "--lie", &target]);
    assert!(stdout(&o).contains("H^3 = 1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cohomology_subcommand() {
    let o = framing(&["cohomology", "--lie", "sl3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dims"], serde_json::json!({"0": 1, "3": 1, "5": 1, "8": 1}));
    let o = framing(&["cohomology", "--lie", "so3", "--module", "adjoint"]);
    assert!(stdout(&o).contains("total 0"));
    let o = framing(&["cohomology", "--lie", "so3", "--dr", "--reduced", "--window", "-1..8"]);
    assert!(stdout(&o).contains("total 0"), "{}", stdout(&o));
}

#[test]
fn e3_and_oracle_subcommands() {
    let o = framing(&["e3", "--dim", "3", "--coeffs", "betti:3=1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"][0]["degree"], 7);
    let o = framing(&["oracle", "--dim", "3", "--coeffs", "betti:3=1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("match"));
}

#[test]
fn exit_codes() {
    assert_eq!(framing(&["anomaly", "--dim", "3", "--target", "nope"]).status.code(), Some(1));
    assert_eq!(framing(&["anomaly", "--dim", "4", "--target", "abelian_cs"]).status.code(), Some(1));
    assert_eq!(framing(&["bogus-subcommand"]).status.code(), Some(1));
    assert_eq!(framing(&["oracle", "--dim", "6"]).status.code(), Some(1));
    assert_eq!(framing(&["anomaly", "--dim", "3", "--target", "betti:0=1"]).status.code(), Some(1));
    assert_eq!(framing(&["--help"]).status.code(), Some(0));
}

//! Support for the acceptance suite: locating the `framing` binary.

use std::path::PathBuf;
use std::process::Command;

/// Path of the `framing` executable in the current target directory,
/// building it first if needed.
pub fn framing_binary() -> PathBuf {
    let exe = std::env::current_exe().expect("current executable");
    // target/<profile>/deps/acceptance-<hash> → target/<profile>/framing
    let dir = exe.parent().and_then(|d| d.parent()).expect("target directory");
    let bin = dir.join(format!("framing{}", std::env::consts::EXE_SUFFIX));
    if !bin.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let profile = dir.file_name().and_then(|p| p.to_str()).unwrap_or("debug");
        let mut cmd = Command::new(cargo);
        cmd.args(["build", "-p", "framing-cli", "--bin", "framing"]);
        if profile == "release" {
            cmd.arg("--release");
        }
        let status = cmd.status().expect("run cargo build");
        assert!(status.success(), "building the framing binary failed");
    }
    bin
}

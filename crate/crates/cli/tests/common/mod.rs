//! Helpers shared by the integration suites: spawning the built binary and
//! reading its `key value` stdout fields.

#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_pauliq")
}

pub struct Run {
    pub status: Option<i32>,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_in(dir: &Path, envs: &[(&str, &str)], args: &[&str]) -> Run {
    let output = Command::new(bin())
        .args(args)
        .current_dir(dir)
        .envs(envs.iter().copied())
        .output()
        .expect("binary runs");
    Run {
        status: output.status.code(),
        stdout: String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    }
}

pub fn run_ok(dir: &Path, args: &[&str]) -> String {
    let run = run_in(dir, &[], args);
    assert_eq!(
        run.status,
        Some(0),
        "command {args:?} failed:\n{}{}",
        run.stdout,
        run.stderr
    );
    run.stdout
}

/// Value of a `key value` stdout line.
pub fn field<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` line in:\n{stdout}"))
}

pub fn write_h2(dir: &Path) {
    run_ok(dir, &["model", "--kind", "h2", "-o", "h2.txt"]);
}

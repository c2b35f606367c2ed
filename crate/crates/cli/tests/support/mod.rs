//! Golden-file cases for the command-line binary.
//!
//! `golden/cases.json` lists argument vectors; `@golden/` in an argument
//! expands to the fixture directory. Each case runs twice and must produce
//! byte-identical output matching `golden/<name>.stdout` and, for failures,
//! `golden/<name>.stderr`. Set `GOLDEN_UPDATE=1` to rewrite the snapshots.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde::Deserialize;

#[derive(Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub code: i32,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json");
    serde_json::from_str(&text).expect("valid cases.json")
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

pub fn run(case: &Case) -> Run {
    let dir = golden_dir();
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| match a.strip_prefix("@golden/") {
            Some(rest) => dir.join(rest).to_string_lossy().into_owned(),
            None => a.clone(),
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_projohnson")).args(&args).output().expect("binary runs");
    Run { code: out.status.code().unwrap_or(-1), stdout: out.stdout, stderr: out.stderr }
}

/// Runs one case twice and compares with the snapshots.
pub fn check(case: &Case) -> Result<(), String> {
    let a = run(case);
    let b = run(case);
    if (a.code, &a.stdout, &a.stderr) != (b.code, &b.stdout, &b.stderr) {
        return Err(format!("{}: output differs between two runs", case.name));
    }
    if a.code != case.code {
        return Err(format!(
            "{}: exit {} (expected {}), stderr: {}",
            case.name,
            a.code,
            case.code,
            String::from_utf8_lossy(&a.stderr)
        ));
    }
    let dir = golden_dir();
    let update = std::env::var_os("GOLDEN_UPDATE").is_some();
    for (ext, bytes) in [("stdout", &a.stdout), ("stderr", &a.stderr)] {
        let path = dir.join(format!("{}.{ext}", case.name));
        if update {
            if bytes.is_empty() {
                let _ = std::fs::remove_file(&path);
            } else {
                std::fs::write(&path, bytes).map_err(|e| e.to_string())?;
            }
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_default();
        if want != **bytes {
            return Err(format!(
                "{}: {ext} differs from snapshot\n--- want\n{}--- got\n{}",
                case.name,
                String::from_utf8_lossy(&want),
                String::from_utf8_lossy(bytes)
            ));
        }
    }
    Ok(())
}

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cli-runner")
}

pub fn cli(args: &[&str]) -> Outcome {
    let out = Command::new(bin()).args(args).output().expect("spawn cli-runner");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Writes `config` into `dir` and runs `cmd --config … --out dir/out`.
pub fn run_config(dir: &Path, cmd: &str, config: &str, extra: &[&str]) -> (Outcome, PathBuf) {
    let cfg = dir.join(format!("{cmd}.toml"));
    std::fs::write(&cfg, config).unwrap();
    let out = dir.join("out");
    let mut args = vec![cmd, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    (cli(&args), out)
}

pub fn sample_config(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)).unwrap()
}

/// Data rows of a series file (footer excluded) and the footer fields.
pub fn read_series(path: &Path) -> (Vec<Vec<String>>, Vec<String>) {
    let mut rd = csv::ReaderBuilder::new().flexible(true).from_path(path).unwrap();
    let mut rows = Vec::new();
    let mut footer = Vec::new();
    for r in rd.records() {
        let r: Vec<String> = r.unwrap().iter().map(str::to_owned).collect();
        if r[0] == "termination" {
            footer = r;
        } else {
            rows.push(r);
        }
    }
    (rows, footer)
}

pub fn column(rows: &[Vec<String>], c: usize) -> Vec<f64> {
    rows.iter().filter(|r| !r[c].is_empty()).map(|r| r[c].parse().unwrap()).collect()
}

pub fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("run.json")).unwrap()).unwrap()
}

pub const IWASAWA_FLOW: &str = r#"
seed = 2

[[scenario]]
name = "iwasawa"
kind = "iwasawa_flow"

[scenario.geometry]
grid = 16
amplitude = 0.05

[scenario.stepper]
scheme = "imex"
dt = 0.05
t_max = 4.0
record_every = 20

[scenario.output]
checkpoint_every = 30
"#;

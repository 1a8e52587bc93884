//! `report`: plot-ready two-column files from a finished flow run.

use crate::error::CliError;
use crate::flow::{DEFAULT_CSV, MANIFEST};
use std::path::Path;

pub const PLOT_DIR: &str = "plot";

/// Writes `DIR/plot/<column>.dat` with `t value` lines for every diagnostic
/// that has at least one value. Returns the files written.
pub fn run(dir: &Path) -> Result<Vec<String>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Usage(format!("{} is not a directory", dir.display())));
    }
    let manifest = dir.join(MANIFEST);
    let csv_name = match std::fs::read_to_string(&manifest) {
        Ok(text) => serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .and_then(|v| v["csv"].as_str().map(str::to_owned))
            .unwrap_or_else(|| DEFAULT_CSV.to_owned()),
        Err(_) => DEFAULT_CSV.to_owned(),
    };
    let series = dir.join(&csv_name);
    let missing: Vec<&str> =
        [(MANIFEST, &manifest), (csv_name.as_str(), &series)].iter().filter(|(_, p)| !p.is_file()).map(|(n, _)| *n).collect();
    if !missing.is_empty() {
        return Err(CliError::Usage(format!("incomplete run in {}: missing {}", dir.display(), missing.join(", "))));
    }

    let mut rd = csv::ReaderBuilder::new().flexible(true).from_path(&series).map_err(|e| csv_err(&series, e))?;
    let header: Vec<String> = rd.headers().map_err(|e| csv_err(&series, e))?.iter().map(str::to_owned).collect();
    if header.first().map(String::as_str) != Some("t") {
        return Err(CliError::Usage(format!("{}: first column is not `t`", series.display())));
    }
    let mut columns: Vec<String> = vec![String::new(); header.len()];
    let mut finished = false;
    for rec in rd.records() {
        let rec = rec.map_err(|e| csv_err(&series, e))?;
        if rec.get(0) == Some("termination") {
            finished = true;
            break;
        }
        let Some(t) = rec.get(0) else { continue };
        for (c, col) in columns.iter_mut().enumerate().skip(1) {
            match rec.get(c) {
                Some(v) if !v.is_empty() => {
                    col.push_str(t);
                    col.push(' ');
                    col.push_str(v);
                    col.push('\n');
                }
                _ => {}
            }
        }
    }
    if !finished {
        return Err(CliError::Usage(format!("incomplete run in {}: {csv_name} has no termination row", dir.display())));
    }

    let plot = dir.join(PLOT_DIR);
    std::fs::create_dir_all(&plot).map_err(|e| CliError::io(&plot, e))?;
    let mut written = Vec::new();
    for (name, col) in header.iter().zip(&columns).skip(1) {
        let p = plot.join(format!("{name}.dat"));
        if col.is_empty() {
            // a stale file from an earlier report would not match this run
            if p.exists() {
                std::fs::remove_file(&p).map_err(|e| CliError::io(&p, e))?;
            }
            continue;
        }
        std::fs::write(&p, col).map_err(|e| CliError::io(&p, e))?;
        written.push(format!("{PLOT_DIR}/{name}.dat"));
    }
    Ok(written)
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

mod common;

use common::*;
use std::path::Path;

fn dat(path: &Path) -> Vec<(f64, f64)> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| {
            let mut it = l.split(' ').map(|v| v.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

#[test]
fn iwasawa_report_is_decreasing_and_idempotent() {
    let tmp = tempfile::tempdir().unwrap();
    let (o, out) = run_config(tmp.path(), "flow", IWASAWA_FLOW, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let dir = out.join("iwasawa");
    let o = cli(&["report", dir.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let min = dat(&dir.join("plot/min_Omega.dat"));
    assert_eq!(min.len(), 5);
    assert!(min.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 < w[0].1), "{min:?}");
    // h_est_ratio lacks values for this flow
    assert!(!dir.join("plot/h_est_ratio.dat").exists());
    let before: Vec<Vec<u8>> =
        ["min_Omega", "mean_Omega", "max_Omega", "balanced_residual"].iter().map(|c| std::fs::read(dir.join(format!("plot/{c}.dat"))).unwrap()).collect();
    let again = cli(&["report", dir.to_str().unwrap()]);
    assert_eq!(again.code, 0);
    assert_eq!(again.stdout, o.stdout);
    let after: Vec<Vec<u8>> =
        ["min_Omega", "mean_Omega", "max_Omega", "balanced_residual"].iter().map(|c| std::fs::read(dir.join(format!("plot/{c}.dat"))).unwrap()).collect();
    assert_eq!(before, after);
}

#[test]
fn converged_fuyau_report_ends_balanced() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = "[[scenario]]\nname = \"fy\"\nkind = \"fuyau_flow\"\n[scenario.geometry]\nseed = 3\n[scenario.physics]\nalpha_prime = 0.05\n";
    let (o, out) = run_config(tmp.path(), "flow", cfg, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let dir = out.join("fy");
    assert_eq!(read_series(&dir.join("series.csv")).1[1], "converged");
    assert_eq!(cli(&["report", dir.to_str().unwrap()]).code, 0);
    let b = dat(&dir.join("plot/balanced_residual.dat"));
    assert!(b.last().unwrap().1 <= 1e-6, "{:?}", b.last());
}

#[test]
fn empty_or_partial_directories_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cli(&["report", tmp.path().to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("run.json") && o.stderr.contains("series.csv"), "{}", o.stderr);
    std::fs::write(tmp.path().join("run.json"), "{}").unwrap();
    std::fs::write(tmp.path().join("series.csv"), "t,min_Omega\n0,1\n").unwrap();
    let o = cli(&["report", tmp.path().to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("termination"), "{}", o.stderr);
    let o = cli(&["report", tmp.path().join("missing").to_str().unwrap()]);
    assert_eq!(o.code, 2);
}

mod common;

use common::*;

#[test]
fn iwasawa_mean_grows_by_two_and_omega_decreases() {
    let tmp = tempfile::tempdir().unwrap();
    let (o, out) = run_config(tmp.path(), "flow", IWASAWA_FLOW, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let dir = out.join("iwasawa");
    let m = manifest(&dir);
    let growth = m["final_mean"].as_f64().unwrap() - m["initial_mean"].as_f64().unwrap();
    assert!((growth - 2.0).abs() <= 1e-6, "growth {growth}");
    let (rows, footer) = read_series(&dir.join("series.csv"));
    assert_eq!(footer, ["termination", "t_max", "4", "", "", "", ""]);
    let min = column(&rows, 1);
    assert!(min.windows(2).all(|w| w[1] < w[0]), "{min:?}");
    assert!(dir.join("checkpoint.json").is_file());
}

#[test]
fn lie_flow_reports_a_singular_time() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = "[[scenario]]\nname = \"lie\"\nkind = \"lie_flow\"\n[scenario.physics]\nalpha_prime = 0.0\n";
    let (o, out) = run_config(tmp.path(), "flow", cfg, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (rows, footer) = read_series(&out.join("lie/series.csv"));
    assert_eq!(footer[1], "blowup");
    let t: f64 = footer[2].parse().unwrap();
    // |Ω| = ρ^{-3/2} reaches 1e-6 at t = 2(1 − 10⁻²) from ρ₀ = 1
    assert!((t - 1.98).abs() < 1e-6, "{t}");
    assert!(*column(&rows, 1).last().unwrap() < 1e-5);
    assert_eq!(manifest(&out.join("lie"))["termination"]["kind"], "blowup");
}

#[test]
fn surface_flow_reaches_t_max() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = "[[scenario]]\nname = \"s\"\nkind = \"surface_flow\"\n[scenario.physics]\nalpha_prime = 0.05\n";
    let (o, out) = run_config(tmp.path(), "flow", cfg, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (_, footer) = read_series(&out.join("s/series.csv"));
    assert_eq!(&footer[1..3], ["t_max", "10"]);
}

#[test]
fn scaled_surface_data_blows_up() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"
[[scenario]]
name = "tiny"
kind = "surface_flow"
[scenario.geometry]
grid = 32
[scenario.physics]
alpha_prime = 0.05
initial_scale = 0.001
[scenario.stepper]
scheme = "imex"
dt = 0.001
t_max = 10.0
record_every = 100
"#;
    let (o, out) = run_config(tmp.path(), "flow", cfg, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (_, footer) = read_series(&out.join("tiny/series.csv"));
    assert_eq!(footer[1], "blowup");
    let t: f64 = footer[2].parse().unwrap();
    assert!(t > 0.0 && t < 10.0);
}

#[test]
fn resume_reproduces_the_series_bit_exactly() {
    let tmp = tempfile::tempdir().unwrap();
    let (o, out) = run_config(tmp.path(), "flow", IWASAWA_FLOW, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let full = std::fs::read(out.join("iwasawa/series.csv")).unwrap();
    // the last checkpoint of 80 steps is at step 60
    let cp = tmp.path().join("cp.json");
    std::fs::copy(out.join("iwasawa/checkpoint.json"), &cp).unwrap();
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cp).unwrap()).unwrap();
    assert_eq!(saved["state"]["step_count"], 60);

    let other = tempfile::tempdir().unwrap();
    let (o, out2) = run_config(other.path(), "flow", IWASAWA_FLOW, &["--resume", cp.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(std::fs::read(out2.join("iwasawa/series.csv")).unwrap(), full);
    assert_eq!(manifest(&out2.join("iwasawa"))["resumed"], true);
}

#[test]
fn resume_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let bogus = tmp.path().join("bogus.json");
    std::fs::write(&bogus, "{}").unwrap();
    let (o, _) = run_config(tmp.path(), "flow", IWASAWA_FLOW, &["--resume", bogus.to_str().unwrap()]);
    assert_eq!(o.code, 2, "{}", o.stderr);
    assert!(o.stderr.contains("bogus.json"), "{}", o.stderr);
    // a Lie checkpoint cannot continue a torus flow
    let lie = "[[scenario]]\nname = \"lie\"\nkind = \"lie_flow\"\n[scenario.output]\ncheckpoint_every = 5\n";
    let (o, out) = run_config(tmp.path(), "flow", lie, &[]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let cp = out.join("lie/checkpoint.json");
    let (o, _) = run_config(tmp.path(), "flow", IWASAWA_FLOW, &["--resume", cp.to_str().unwrap()]);
    assert_eq!(o.code, 2, "{}", o.stderr);
    // two scenarios with --resume
    let two = format!("{IWASAWA_FLOW}\n{}", lie.replace("\"lie\"\nkind", "\"lie2\"\nkind"));
    let (o, _) = run_config(tmp.path(), "flow", &two, &["--resume", cp.to_str().unwrap()]);
    assert_eq!(o.code, 2, "{}", o.stderr);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let cfg = sample_config("flow.toml").replace("t_max = 10.0", "t_max = 2.0");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (oa, outa) = run_config(a.path(), "flow", &cfg, &["--jobs", "1"]);
    let (ob, outb) = run_config(b.path(), "flow", &cfg, &["--jobs", "3"]);
    assert_eq!((oa.code, ob.code), (0, 0), "{} {}", oa.stderr, ob.stderr);
    assert_eq!(oa.stdout, ob.stdout);
    for name in ["iwasawa", "lie", "surface", "fuyau"] {
        for f in ["series.csv", "run.json", "checkpoint.json"] {
            let (x, y) = (outa.join(name).join(f), outb.join(name).join(f));
            if x.exists() || y.exists() {
                assert_eq!(std::fs::read(&x).unwrap(), std::fs::read(&y).unwrap(), "{name}/{f}");
            }
        }
    }
}

#[test]
fn unwritable_output_is_an_io_error_with_path() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let cfg = tmp.path().join("c.toml");
    std::fs::write(&cfg, "[[scenario]]\nname = \"lie\"\nkind = \"lie_flow\"\n").unwrap();
    let o = cli(&["flow", "--config", cfg.to_str().unwrap(), "--out", blocker.to_str().unwrap()]);
    assert_eq!(o.code, 3, "{}", o.stderr);
    assert!(o.stderr.contains("file"), "{}", o.stderr);
}

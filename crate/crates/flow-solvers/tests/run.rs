use flow_solvers::{run_flow, run_flow_with, write_csv, Checkpoint, FlowError, FlowScenario, RunOptions, StepperConfig};

fn csv_bytes(series: &[flow_solvers::FlowDiagnostics]) -> Vec<u8> {
    let mut out = Vec::new();
    write_csv(series, &mut out).unwrap();
    out
}

fn fuyau() -> (FlowScenario, StepperConfig) {
    let mut cfg = StepperConfig::imex(0.2, 3.0);
    cfg.record_every = 2;
    (FlowScenario::fuyau_large_m(8, 0.05, 8), cfg)
}

#[test]
fn identical_runs_give_identical_csv() {
    let (sc, cfg) = fuyau();
    let a = csv_bytes(&run_flow(&sc, &cfg).unwrap().series);
    let b = csv_bytes(&run_flow(&sc, &cfg).unwrap().series);
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("t,min_Omega,mean_Omega,max_Omega,balanced_residual,alpha_R_sup,h_est_ratio\n"));
}

#[test]
fn resume_reproduces_the_series_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flow.json");
    let (sc, cfg) = fuyau();
    let full = run_flow(&sc, &cfg).unwrap();
    let opts = RunOptions { checkpoint_path: Some(path.clone()), checkpoint_every: 5, resume: None };
    run_flow_with(&sc, &cfg, &opts).unwrap();
    let cp = Checkpoint::read(&path).unwrap();
    assert_eq!(cp.state.step_count, 10);
    let resumed = run_flow_with(&sc, &cfg, &RunOptions { resume: Some(cp), ..Default::default() }).unwrap();
    assert_eq!(csv_bytes(&resumed.series), csv_bytes(&full.series));
    assert_eq!(resumed.series, full.series);
    assert_eq!(resumed.state, full.state);
    assert_eq!(resumed.termination, full.termination);
}

#[test]
fn bad_checkpoints_are_resume_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert!(matches!(Checkpoint::read(&path), Err(FlowError::Resume(_))));
    assert!(matches!(Checkpoint::read(&dir.path().join("missing.json")), Err(FlowError::Resume(_))));

    // a checkpoint of another flow does not resume this scenario
    let lie = FlowScenario::lie_sl2c(1.0, 0.0);
    let cfg = StepperConfig::rk4(0.01, 0.05);
    let opts = RunOptions { checkpoint_path: Some(path.clone()), checkpoint_every: 1, resume: None };
    run_flow_with(&lie, &cfg, &opts).unwrap();
    let cp = Checkpoint::read(&path).unwrap();
    let (sc, cfg) = fuyau();
    let err = run_flow_with(&sc, &cfg, &RunOptions { resume: Some(cp.clone()), ..Default::default() }).unwrap_err();
    assert!(matches!(err, FlowError::Resume(_)), "{err}");

    let mut old = cp;
    old.version = 0;
    std::fs::write(&path, serde_json::to_string(&old).unwrap()).unwrap();
    assert!(matches!(Checkpoint::read(&path), Err(FlowError::Resume(_))));
}

#[test]
fn invalid_configuration_is_rejected() {
    let mut cfg = StepperConfig::imex(0.1, 1.0);
    cfg.blowup_bounds = (1.0, 0.5);
    let err = run_flow(&FlowScenario::lie_sl2c(1.0, 0.0), &cfg).unwrap_err();
    assert!(matches!(err, FlowError::Config(_)));
}

use flow_solvers::{run_flow, step_lie_flow, FlowScenario, FlowState, StepperConfig, Termination};
use geometry_scenarios::LieFrameAlgebra;

fn crossing(dt: f64, cfl: f64) -> f64 {
    let mut cfg = StepperConfig::rk4(dt, 10.0).adaptive(cfl);
    cfg.geometry_points = 0;
    match run_flow(&FlowScenario::lie_sl2c(1.0, 0.0), &cfg).unwrap().termination {
        Termination::Blowup { crossing: Some(t), bracket, .. } => {
            assert!(bracket.0 <= t && t <= bracket.1);
            t
        }
        other => panic!("expected blow-up, got {other:?}"),
    }
}

#[test]
fn abelian_frame_is_static() {
    let alg = LieFrameAlgebra::abelian(2.0);
    let mut s = FlowState::lie(2.0).unwrap();
    for _ in 0..10 {
        s = step_lie_flow(&s, &alg, 0.1, &StepperConfig::rk4(0.1, 5.0)).unwrap();
    }
    assert_eq!(s.rho, Some(2.0));
    let run = run_flow(&FlowScenario::Lie { algebra: alg, alpha_prime: 0.1 }, &StepperConfig::rk4(0.1, 1.0)).unwrap();
    assert!(matches!(run.termination.name(), "t_max" | "converged"));
}

#[test]
fn sl2c_develops_a_finite_time_singularity() {
    let cfg = StepperConfig::rk4(0.01, 10.0).adaptive(0.05);
    let run = run_flow(&FlowScenario::lie_sl2c(1.0, 0.0), &cfg).unwrap();
    assert_eq!(run.termination.name(), "blowup");
    for w in run.series.windows(2) {
        assert!(w[1].min_omega < w[0].min_omega);
    }
    let last = run.series.last().unwrap();
    assert!(last.min_omega < 1e-5, "{}", last.min_omega);
    let rho = run.state.rho.unwrap();
    assert!((last.min_omega - rho.powf(-1.5)).abs() <= 1e-12 * last.min_omega);
    assert!(last.balanced_residual.unwrap() < 1e-8);
    // |Ω| reaches 1e-6 when ρ = 10⁴, at t = 2(ρ₀^{-1/2} − 10⁻²)
    let t = crossing(0.01, 0.05);
    assert!((t - 1.98).abs() < 1e-6, "{t}");
}

#[test]
fn crossing_time_is_stable_under_refinement() {
    let (a, b) = (crossing(0.01, 0.05), crossing(0.001, 0.005));
    assert!((a - b).abs() <= 1e-4 * b, "{a} vs {b}");
}

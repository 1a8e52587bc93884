use chart_geometry::{check_identity, FourierScalarField, IdentityId};
use flow_solvers::{run_flow, FlowScenario, FuYauFlow, StepperConfig, Torus};
use geometry_scenarios::fuyau::{complex_laplacian, make_fuyau_data_with};
use geometry_scenarios::{make_hym_bundle, random_points};
use num_complex::Complex64 as C64;

fn converged_run(alpha_prime: f64, n: usize) -> (FlowScenario, flow_solvers::FlowRun) {
    let sc = FlowScenario::fuyau_large_m(3, alpha_prime, n);
    let mut cfg = StepperConfig::imex(0.2, 200.0);
    cfg.record_every = 5;
    cfg.geometry_points = 3;
    let run = run_flow(&sc, &cfg).unwrap();
    (sc, run)
}

#[test]
fn heat_flow_conserves_the_mean() {
    let mut data = make_fuyau_data_with(5, 0.0, 0.0, 0.5, 0.3).without_source();
    let mut u = FourierScalarField::zero(4);
    u.add_real_mode(vec![1, 0, 0, 1], C64::new(0.2, 0.1));
    u.add_real_mode(vec![0, 2, -1, 0], C64::new(-0.1, 0.05));
    data.u = u;
    let sc = FlowScenario::FuYau { data, n: 8, fiber_scale: 1.0 };
    let (_, s0) = sc.build().unwrap();
    let mut cfg = StepperConfig::imex(0.05, 2.0);
    cfg.geometry_points = 0;
    let run = run_flow(&sc, &cfg).unwrap();
    assert!(matches!(run.termination.name(), "t_max" | "converged"));
    let drift = (run.state.coeffs[0].re - s0.coeffs[0].re).abs();
    assert!(drift <= 1e-10 * run.state.time, "mean drift {drift:e}");
    // the oscillating part decays
    let osc = run.state.coeffs.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max);
    assert!(osc < 1e-3, "{osc:e}");
}

#[test]
fn small_alpha_stationary_state_matches_linear_solve() {
    let data = make_fuyau_data_with(11, 1e-8, 10.0_f64.ln(), 0.5, 0.3).without_asd();
    let sc = FlowScenario::FuYau { data: data.clone(), n: 8, fiber_scale: 1.0 };
    let mut cfg = StepperConfig::imex(0.25, 100.0);
    cfg.geometry_points = 0;
    let run = run_flow(&sc, &cfg).unwrap();
    assert_eq!(run.termination.name(), "converged", "{:?}", run.termination);
    // Δ_c w = −μ with the mean of w fixed at 10, solved mode by mode
    let t = Torus::new(4, 8).unwrap();
    let mu = t.from_field(&data.mu).unwrap();
    let mut w = vec![C64::new(0.0, 0.0); t.len()];
    w[0] = C64::new(10.0, 0.0);
    for k in 1..t.len() {
        let s = t.laplacian_symbol(k);
        if s != 0.0 {
            w[k] = -mu[k] / s;
        }
    }
    let (a, b) = (t.values(&w), run.state.exp_values());
    let err = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(err <= 1e-7, "stationary state differs by {err:e}");
    // and the oracle agrees with w = 10 − ψ
    let psi = t.sample(&data.psi);
    assert!(a.iter().zip(&psi).all(|(x, p)| (x - 10.0 + p).abs() < 1e-12));
    assert!(complex_laplacian(&data.psi).modes.len() == data.mu.modes.len());
}

#[test]
fn large_data_converges_and_stays_elliptic() {
    let (sc, run) = converged_run(0.05, 16);
    assert_eq!(run.termination.name(), "converged", "{:?}", run.termination);
    let (flow, _) = sc.build().unwrap();
    let residual = flow.rate(&run.state).iter().map(|r| r.abs()).fold(0.0, f64::max);
    assert!(residual <= 1e-6, "stationary residual {residual:e}");
    for d in &run.series {
        assert!(d.is_finite());
        let a = d.alpha_r_sup.unwrap();
        assert!(a < 0.5, "sup |α′R| = {a} at t = {}", d.t);
    }
    // approach is monotone in the time-derivative sup after the transient
    let tail: Vec<f64> = run.series.iter().skip(2).filter_map(|d| d.time_derivative_sup).collect();
    assert!(tail.windows(2).all(|w| w[1] <= w[0] * 1.0001 + 1e-12), "{tail:?}");
}

#[test]
fn hym_residual_of_static_bundle_is_unchanged() {
    let (sc, run) = converged_run(0.05, 16);
    let FlowScenario::FuYau { data, fiber_scale, .. } = &sc else { unreachable!() };
    let flow = FuYauFlow::new(Torus::new(4, 16).unwrap(), data.clone(), *fiber_scale).unwrap();
    let (_, s0) = sc.build().unwrap();
    let h = make_hym_bundle(9, 0.3);
    for x in random_points(4, 3) {
        let r0 = check_identity(&flow.metric(&s0), Some(&h), &x, IdentityId::HymResidual).unwrap();
        let r1 = check_identity(&flow.metric(&run.state), Some(&h), &x, IdentityId::HymResidual).unwrap();
        assert!(r0 <= 1e-10 && r1 <= 1e-10, "{r0:e} → {r1:e}");
    }
}

#[test]
fn torsion_estimate_ratio_is_uniform_in_alpha() {
    let mut ratios = Vec::new();
    for ap in [0.1, 0.05, 0.025] {
        let (_, run) = converged_run(ap, 16);
        assert_eq!(run.termination.name(), "converged", "α′ = {ap}: {:?}", run.termination);
        let last = run.series.last().unwrap();
        ratios.push(last.h_est_ratio.unwrap());
        eprintln!("α′ = {ap}: ratio {:?} alpha_R {:?} steps {}", last.h_est_ratio, last.alpha_r_sup, last.step);
    }
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(hi <= 2.0 * lo, "ratios {ratios:?}");
}

use chart_geometry::FourierScalarField;
use flow_solvers::{run_flow, step_surface_flow, FlowError, FlowKind, FlowScenario, FlowState, Scheme, StepperConfig, Torus};
use geometry_scenarios::SurfaceData;
use num_complex::Complex64 as C64;

#[test]
fn constant_f_is_stationary_without_curvature() {
    let data = SurfaceData::constant_kappa(0.0);
    let t = Torus::new(2, 16).unwrap();
    let f = FourierScalarField::constant(2, C64::new(0.3, 0.0));
    for scheme in [Scheme::Imex, Scheme::Rk4] {
        let mut s = FlowState::from_field(FlowKind::Surface, &t, &f).unwrap();
        let s0 = s.clone();
        let cfg = StepperConfig::new(scheme, 0.01, 1.0);
        for _ in 0..20 {
            s = step_surface_flow(&s, &data, 0.7, &cfg).unwrap();
        }
        let d = s.coeffs.iter().zip(&s0.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(d < 1e-14, "{scheme:?}: drift {d:e}");
        assert_eq!(s.step_count, 20);
    }
}

#[test]
fn nonnegative_u_data_runs_to_t_10() {
    let sc = FlowScenario::surface_default(0.05);
    let mut cfg = StepperConfig::imex(0.01, 10.0);
    cfg.record_every = 50;
    let run = run_flow(&sc, &cfg).unwrap();
    assert_eq!(run.termination.name(), "t_max", "{:?}", run.termination);
    assert_eq!(run.state.time, 10.0);
    assert!(run.series.iter().all(|d| d.is_finite()));
    // u₀ ≥ 0 was the premise
    let (_, s0) = sc.build().unwrap();
    let FlowScenario::Surface { data, alpha_prime, .. } = &sc else { unreachable!() };
    let t = s0.torus().unwrap();
    let kappa = t.sample(&data.kappa);
    assert!(s0.exp_values().iter().zip(&kappa).all(|(v, k)| v + 0.5 * alpha_prime * k / v >= 0.0));
}

#[test]
fn constant_data_matches_scalar_ode() {
    // κ ≡ −c: y = e^{2f} obeys ẏ = 2c(y − α′c/2)
    let (c, ap, v0) = (1.0, 0.05, 0.8_f64);
    let data = SurfaceData::constant_kappa(-c);
    let t = Torus::new(2, 4).unwrap();
    let f = FourierScalarField::constant(2, C64::new(v0.ln(), 0.0));
    let mut s = FlowState::from_field(FlowKind::Surface, &t, &f).unwrap();
    let cfg = StepperConfig::rk4(0.005, 1.0);
    for _ in 0..200 {
        s = step_surface_flow(&s, &data, ap, &cfg).unwrap();
    }
    let y = ap * c / 2.0 + (v0 * v0 - ap * c / 2.0) * (2.0 * c * s.time).exp();
    let exact = y.sqrt();
    let err = s.exp_values().iter().map(|v| (v - exact).abs() / exact).fold(0.0, f64::max);
    assert!(err <= 1e-8, "relative error {err:e}");
}

#[test]
fn tiny_data_blows_up_with_location() {
    let mut sc = FlowScenario::surface_default(0.05);
    if let FlowScenario::Surface { scale, n, .. } = &mut sc {
        *scale = 1e-3;
        *n = 32;
    }
    let run = run_flow(&sc, &StepperConfig::imex(0.001, 10.0)).unwrap();
    match &run.termination {
        flow_solvers::Termination::Blowup { bracket, location, .. } => {
            assert!(bracket.0 < bracket.1);
            assert_eq!(location.as_ref().unwrap().len(), 2);
        }
        other => panic!("expected blow-up, got {other:?}"),
    }
    // the single-step API reports the same event as an error
    let (_, s0) = sc.build().unwrap();
    let FlowScenario::Surface { data, .. } = &sc else { unreachable!() };
    let mut s = s0;
    let cfg = StepperConfig::imex(0.001, 10.0);
    let err = loop {
        match step_surface_flow(&s, data, 0.05, &cfg) {
            Ok(n) => s = n,
            Err(e) => break e,
        }
    };
    assert!(matches!(err, FlowError::Blowup { location: Some(_), .. }), "{err}");
}

use cli_runner::config::*;
use flow_solvers::{Scheme, StepperConfig};
use proptest::option::of;
use proptest::prelude::*;

fn geometry() -> impl Strategy<Value = GeometryParams> {
    (
        (of(any::<u64>()), of(1i32..=4), of(0.0f64..0.1), of(1usize..=16)),
        (of(4usize..=24), of(1usize..=1000), of(1usize..=1000), of(2usize..=64)),
        of(prop_oneof![Just(Fixture::Iwasawa), Just(Fixture::SabotagedIwasawa)]),
    )
        .prop_map(|((seed, cutoff, amplitude, modes), (grid, metrics, points, quadrature), fixture)| GeometryParams {
            seed,
            cutoff,
            amplitude,
            modes,
            grid,
            metrics,
            points,
            quadrature,
            fixture,
        })
}

fn physics() -> impl Strategy<Value = PhysicsParams> {
    (of(1e-3f64..1.0), of(1.0f64..100.0), of(0.0f64..10.0), of(1e-3f64..10.0), of(0.1f64..10.0), of(prop_oneof![Just(Algebra::Sl2c), Just(Algebra::Abelian)]))
        .prop_map(|(alpha_prime, m, kappa_amplitude, initial_scale, rho0, algebra)| PhysicsParams {
            alpha_prime,
            m,
            kappa_amplitude,
            initial_scale,
            rho0,
            algebra,
        })
}

fn stepper() -> impl Strategy<Value = StepperConfig> {
    (prop_oneof![Just(Scheme::Imex), Just(Scheme::Rk4)], 1e-4f64..0.1, 1.0f64..100.0, of(0.01f64..0.5), 1usize..100).prop_map(
        |(scheme, dt, t_max, cfl, record_every)| StepperConfig { cfl, record_every, ..StepperConfig::new(scheme, dt, t_max) },
    )
}

fn scenario(i: usize) -> impl Strategy<Value = ScenarioConfig> {
    let kinds = prop_oneof![
        Just(ScenarioKind::IdentitySuite),
        Just(ScenarioKind::SurfaceFlow),
        Just(ScenarioKind::FuyauFlow),
        Just(ScenarioKind::IwasawaFlow),
        Just(ScenarioKind::LieFlow),
        Just(ScenarioKind::HodgeAeppli),
        Just(ScenarioKind::EomReport),
    ];
    let hodge = (
        of(prop_oneof![Just(HodgeReference::Random), Just(HodgeReference::Same), Just(HodgeReference::Flat)]),
        of(proptest::collection::vec(any::<u64>(), 1..4)),
        of(prop_oneof![Just(BundleChoice::Planar), Just(BundleChoice::Hym)]),
    )
        .prop_map(|(reference, reference_seeds, bundle)| HodgeParams { reference, reference_seeds, bundle });
    let tol = (of(1e-12f64..1e-3), of(1e-12f64..1e-3), of(1e-12f64..1e-3))
        .prop_map(|(unconditional, conditional, hodge)| ToleranceParams { unconditional, conditional, hodge });
    let output = (of("[a-z]{1,8}\\.csv"), of(0u64..1000), of("[a-z]{1,8}\\.json"))
        .prop_map(|(csv, checkpoint_every, checkpoint)| OutputParams { csv, checkpoint_every, checkpoint });
    (kinds, geometry(), physics(), of(stepper()), tol, hodge, output).prop_map(
        move |(kind, mut geometry, physics, stepper, tolerance, hodge, output)| {
            // keep kind-specific ranges valid
            if kind == ScenarioKind::SurfaceFlow {
                geometry.grid = geometry.grid.map(|g| g * 4);
            }
            let stepper = if kind.command() == Command::Flow { stepper } else { None };
            ScenarioConfig { name: format!("s{i}-{}", kind.name()), kind, geometry, physics, stepper, tolerance, hodge, output }
        },
    )
}

fn run_config() -> impl Strategy<Value = RunConfig> {
    (of(any::<u64>()), proptest::collection::vec(any::<u8>(), 1..4)).prop_flat_map(|(seed, n)| {
        let scenarios: Vec<_> = (0..n.len()).map(scenario).collect();
        scenarios.prop_map(move |scenarios| RunConfig { seed, scenarios })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_serialize_parse_is_identity(cfg in run_config()) {
        let text = cfg.to_toml();
        let back = RunConfig::parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(back.to_toml(), text);
    }
}

#[test]
fn sample_configs_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for f in ["verify.toml", "flow.toml", "hodge.toml"] {
        let c = RunConfig::load(&dir.join(f)).unwrap();
        assert_eq!(RunConfig::parse(&c.to_toml()).unwrap(), c);
    }
}

#[test]
fn duplicate_names_are_rejected() {
    let t = "[[scenario]]\nname = \"a\"\nkind = \"lie_flow\"\n[[scenario]]\nname = \"a\"\nkind = \"lie_flow\"\n";
    assert!(RunConfig::parse(t).unwrap_err().to_string().contains("duplicate"));
    assert!(RunConfig::parse("seed = 1\n").is_err());
    let bad_stepper = "[[scenario]]\nname = \"a\"\nkind = \"lie_flow\"\n[scenario.stepper]\nscheme = \"rk4\"\ndt = -1.0\nt_max = 1.0\n";
    assert_eq!(RunConfig::parse(bad_stepper).unwrap_err().exit_code(), 2);
}

//! `flow`: time series, footer row, manifest and checkpoints.

use crate::config::{Algebra, RunConfig, ScenarioConfig, ScenarioKind};
use crate::error::CliError;
use crate::output::ScenarioDir;
use flow_solvers::{run_flow_with, write_csv, Checkpoint, FlowScenario, FlowState, RunOptions, StepperConfig, Termination, CSV_HEADER};
use geometry_scenarios::fuyau::make_fuyau_data_with;
use geometry_scenarios::{LieFrameAlgebra, SurfaceData};
use serde::Serialize;
use std::path::Path;

pub const DEFAULT_CSV: &str = "series.csv";
pub const DEFAULT_CHECKPOINT: &str = "checkpoint.json";
pub const MANIFEST: &str = "run.json";
pub const DEFAULT_CHECKPOINT_EVERY: u64 = 100;

pub fn scenario(cfg: &RunConfig, s: &ScenarioConfig) -> Result<FlowScenario, CliError> {
    let seed = cfg.seed_of(s);
    let (g, p) = (&s.geometry, &s.physics);
    Ok(match s.kind {
        ScenarioKind::SurfaceFlow => {
            let mut sc = FlowScenario::surface_default(p.alpha_prime.unwrap_or(0.05));
            if let FlowScenario::Surface { data, n, scale, .. } = &mut sc {
                *data = SurfaceData::standard(p.kappa_amplitude.unwrap_or(1.0));
                *n = g.grid.unwrap_or(64);
                *scale = p.initial_scale.unwrap_or(1.0);
            }
            sc
        }
        ScenarioKind::FuyauFlow => {
            let ap = p.alpha_prime.unwrap_or(0.05);
            let m = p.m.unwrap_or(0.5 / ap);
            let data = make_fuyau_data_with(seed, ap, m.ln(), 0.5, 0.2 * m);
            FlowScenario::FuYau { data, n: g.grid.unwrap_or(16), fiber_scale: ap }
        }
        ScenarioKind::IwasawaFlow => FlowScenario::iwasawa_random(seed, g.amplitude.unwrap_or(0.05), g.grid.unwrap_or(16)),
        ScenarioKind::LieFlow => {
            let rho = p.rho0.unwrap_or(1.0);
            let algebra = match p.algebra.unwrap_or_default() {
                Algebra::Sl2c => LieFrameAlgebra::sl2c(rho),
                Algebra::Abelian => LieFrameAlgebra::abelian(rho),
            };
            FlowScenario::Lie { algebra, alpha_prime: p.alpha_prime.unwrap_or(0.0) }
        }
        k => return Err(CliError::Usage(format!("`{}` is not a flow scenario", k.name()))),
    })
}

pub fn stepper(s: &ScenarioConfig) -> StepperConfig {
    if let Some(st) = &s.stepper {
        return st.clone();
    }
    match s.kind {
        ScenarioKind::SurfaceFlow => StepperConfig { record_every: 50, ..StepperConfig::imex(0.01, 10.0) },
        ScenarioKind::FuyauFlow => StepperConfig { record_every: 5, geometry_points: 3, ..StepperConfig::imex(0.2, 200.0) },
        ScenarioKind::IwasawaFlow => StepperConfig { record_every: 20, ..StepperConfig::imex(0.05, 4.0) },
        _ => StepperConfig::rk4(0.01, 10.0).adaptive(0.05),
    }
}

/// `(name, time)` of the footer row: the crossing time for a blow-up when
/// one was found, else the end of the bracket.
pub fn footer(t: &Termination) -> (&'static str, f64) {
    let time = match t {
        Termination::Converged { t } | Termination::TMax { t } | Termination::EllipticityLost { t, .. } => *t,
        Termination::Blowup { bracket, crossing, .. } => crossing.unwrap_or(bracket.1),
    };
    (t.name(), time)
}

#[derive(Serialize)]
struct Manifest<'a> {
    scenario: &'a str,
    kind: &'a str,
    seed: u64,
    csv: &'a str,
    checkpoint: Option<&'a str>,
    resumed: bool,
    stepper: &'a StepperConfig,
    steps: u64,
    final_time: f64,
    records: usize,
    /// Grid mean of the evolved scalar (`e^f`, `e^u` or `ρ`) at the start and end.
    initial_mean: f64,
    final_mean: f64,
    termination: &'a Termination,
}

fn mean(s: &FlowState) -> f64 {
    match s.rho {
        Some(r) => r,
        None => {
            let v = s.exp_values();
            v.iter().sum::<f64>() / v.len() as f64
        }
    }
}

pub fn run(cfg: &RunConfig, s: &ScenarioConfig, dir: &ScenarioDir, resume: Option<&Path>) -> Result<String, CliError> {
    let sc = scenario(cfg, s)?;
    let st = stepper(s);
    let csv_name = s.output.csv.as_deref().unwrap_or(DEFAULT_CSV);
    let every = s.output.checkpoint_every.unwrap_or(DEFAULT_CHECKPOINT_EVERY);
    let cp_name = (every > 0).then(|| s.output.checkpoint.as_deref().unwrap_or(DEFAULT_CHECKPOINT));
    let resume = match resume {
        Some(p) => Some(Checkpoint::read(p)?),
        None => None,
    };
    let opts = RunOptions { checkpoint_path: cp_name.map(|n| dir.file(n)), checkpoint_every: every, resume };
    let resumed = opts.resume.is_some();
    let (_, initial) = sc.build()?;
    let r = run_flow_with(&sc, &st, &opts)?;

    let mut bytes = Vec::new();
    write_csv(&r.series, &mut bytes)?;
    let (name, time) = footer(&r.termination);
    {
        let mut w = csv::Writer::from_writer(&mut bytes);
        let mut row = vec!["termination".to_string(), name.to_string(), time.to_string()];
        row.resize(CSV_HEADER.len(), String::new());
        w.write_record(&row).map_err(|e| CliError::Numeric(e.to_string()))?;
        w.flush().map_err(|e| CliError::io(&dir.file(csv_name), e))?;
    }
    dir.write_bytes(csv_name, &bytes)?;
    let manifest = Manifest {
        scenario: &s.name,
        kind: s.kind.name(),
        seed: cfg.seed_of(s),
        csv: csv_name,
        checkpoint: cp_name,
        resumed,
        stepper: &st,
        steps: r.state.step_count,
        final_time: r.state.time,
        records: r.series.len(),
        initial_mean: mean(&initial),
        final_mean: mean(&r.state),
        termination: &r.termination,
    };
    dir.write_json(MANIFEST, &manifest)?;
    Ok(format!("{}: {name} at t = {time}", s.name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn footer_prefers_the_crossing_time() {
        let b = Termination::Blowup { bracket: (1.0, 1.5), crossing: Some(1.25), location: None, value: 1e7, reason: String::new() };
        assert_eq!(footer(&b), ("blowup", 1.25));
        let b = Termination::Blowup { bracket: (1.0, 1.5), crossing: None, location: None, value: f64::NAN, reason: String::new() };
        assert_eq!(footer(&b), ("blowup", 1.5));
        assert_eq!(footer(&Termination::TMax { t: 4.0 }), ("t_max", 4.0));
    }
}

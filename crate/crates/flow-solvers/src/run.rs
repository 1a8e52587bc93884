use crate::checkpoint::Checkpoint;
use crate::config::{Scheme, StepperConfig};
use crate::diagnostics::FlowDiagnostics;
use crate::error::FlowError;
use crate::scenario::FlowScenario;
use crate::state::{FlowKind, FlowState};
use crate::torus::Torus;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// One reduced flow. `advance` leaves `time` and `step_count` alone.
pub trait Flow {
    fn kind(&self) -> FlowKind;
    /// `∂ₜ` of the evolved scalar at each grid point (`[ρ̇]` for the Lie flow).
    fn rate(&self, s: &FlowState) -> Vec<f64>;
    /// The evolved scalar: `e^field` at the grid points, or `[ρ]`.
    fn evolved(&self, s: &FlowState) -> Vec<f64> {
        s.exp_values()
    }
    /// Values that must stay, with their reciprocals, inside the blow-up bounds.
    fn bounded(&self, s: &FlowState) -> Vec<f64> {
        s.exp_values()
    }
    fn advance(&self, s: &FlowState, dt: f64, scheme: Scheme) -> FlowState;
    fn omega_norm(&self, s: &FlowState) -> Vec<f64>;
    /// Fills the pointwise geometric fields of `d`.
    fn geometry(&self, s: &FlowState, points: usize, d: &mut FlowDiagnostics) -> Result<(), FlowError>;
    /// Time within the step at which `bounded()[index]` reached `level`, when
    /// the flow has a better estimate than log-linear interpolation.
    fn crossing(&self, _before: &FlowState, _after: &FlowState, _dt: f64, _index: usize, _level: f64) -> Option<f64> {
        None
    }
}

/// RK4 on `u = log w` for `ẇ = rhs(ŵ)`, returning the coefficients of `e^u`.
pub fn rk4_log(torus: &Torus, w: &[C64], dt: f64, rhs: impl Fn(&[C64]) -> Vec<f64>) -> Vec<C64> {
    let u0: Vec<f64> = torus.values(w).iter().map(|v| v.ln()).collect();
    let f = |u: &[f64]| -> Vec<f64> {
        let e: Vec<f64> = u.iter().map(|x| x.exp()).collect();
        rhs(&torus.coeffs(&e)).iter().zip(&e).map(|(r, e)| r / e).collect()
    };
    let shift = |k: &[f64], h: f64| -> Vec<f64> { u0.iter().zip(k).map(|(u, k)| u + h * k).collect() };
    let k1 = f(&u0);
    let k2 = f(&shift(&k1, 0.5 * dt));
    let k3 = f(&shift(&k2, 0.5 * dt));
    let k4 = f(&shift(&k3, dt));
    let u1: Vec<f64> =
        (0..u0.len()).map(|i| u0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect();
    torus.coeffs(&u1.iter().map(|x| x.exp()).collect::<Vec<_>>())
}

fn effective_bounds((lo, hi): (f64, f64)) -> (f64, f64) {
    (lo.max(1.0 / hi), hi.min(1.0 / lo))
}

/// The worst out-of-bounds entry, if any.
fn violation(values: &[f64], bounds: (f64, f64)) -> Option<(usize, f64)> {
    let (lo, hi) = effective_bounds(bounds);
    let mut worst: Option<(usize, f64, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        let badness = if !v.is_finite() || v <= 0.0 {
            f64::INFINITY
        } else if v < lo || v > hi {
            v.ln().abs()
        } else {
            continue;
        };
        if worst.is_none_or(|(_, _, b)| badness > b) {
            worst = Some((i, v, badness));
        }
    }
    worst.map(|(i, v, _)| (i, v))
}

fn choose_dt(flow: &dyn Flow, s: &FlowState, cfg: &StepperConfig) -> f64 {
    let mut h = cfg.dt;
    if let Some(c) = cfg.cfl {
        for (r, v) in flow.rate(s).iter().zip(flow.evolved(s)) {
            if r.abs() > 0.0 {
                h = h.min(c * v.abs() / r.abs());
            }
        }
    }
    h
}

fn location(s: &FlowState, index: usize) -> Option<Vec<f64>> {
    s.torus().map(|t| t.point(index))
}

/// One step with the configured (or adaptive) size; leaving the bounds is an error.
pub fn single_step(flow: &dyn Flow, state: &FlowState, cfg: &StepperConfig) -> Result<FlowState, FlowError> {
    cfg.validate()?;
    state.validate()?;
    let dt = choose_dt(flow, state, cfg);
    let mut next = flow.advance(state, dt, cfg.scheme);
    next.time = state.time + dt;
    next.step_count = state.step_count + 1;
    if let Some((i, v)) = violation(&flow.bounded(&next), cfg.blowup_bounds) {
        return Err(FlowError::Blowup { time: next.time, value: v, location: location(&next, i) });
    }
    Ok(next)
}

pub fn diagnose(flow: &dyn Flow, s: &FlowState, points: usize, reference: &[f64]) -> Result<FlowDiagnostics, FlowError> {
    let om = flow.omega_norm(s);
    let ev = flow.evolved(s);
    let growth = ev.iter().zip(reference).map(|(v, r)| v / r).fold(f64::NEG_INFINITY, f64::max);
    let grad = match s.torus() {
        Some(t) => t.gradient_sq(&s.coeffs).iter().zip(&ev).map(|(g, v)| g.sqrt() / v).fold(0.0, f64::max),
        None => 0.0,
    };
    let mut d = FlowDiagnostics {
        t: s.time,
        step: s.step_count,
        min_omega: om.iter().cloned().fold(f64::INFINITY, f64::min),
        mean_omega: om.iter().sum::<f64>() / om.len() as f64,
        max_omega: om.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        balanced_residual: None,
        alpha_r_sup: None,
        h_est_ratio: None,
        time_derivative_sup: None,
        omega_growth: growth,
        grad_log_omega_sup: grad,
    };
    flow.geometry(s, points, &mut d)?;
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    Converged {
        t: f64,
    },
    TMax {
        t: f64,
    },
    /// The state left the bounds during the step `bracket`; `crossing` is the
    /// interpolated time at which the bound was reached.
    Blowup {
        bracket: (f64, f64),
        crossing: Option<f64>,
        location: Option<Vec<f64>>,
        value: f64,
        reason: String,
    },
    EllipticityLost {
        t: f64,
        alpha_r_sup: f64,
    },
}

impl Termination {
    pub fn name(&self) -> &'static str {
        match self {
            Termination::Converged { .. } => "converged",
            Termination::TMax { .. } => "t_max",
            Termination::Blowup { .. } => "blowup",
            Termination::EllipticityLost { .. } => "ellipticity_lost",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub checkpoint_path: Option<PathBuf>,
    /// Steps between checkpoints; 0 writes none.
    pub checkpoint_every: u64,
    pub resume: Option<Checkpoint>,
}

#[derive(Clone, Debug)]
pub struct FlowRun {
    pub series: Vec<FlowDiagnostics>,
    pub termination: Termination,
    /// The last state inside the bounds.
    pub state: FlowState,
}

pub fn run_flow(scenario: &FlowScenario, cfg: &StepperConfig) -> Result<FlowRun, FlowError> {
    run_flow_with(scenario, cfg, &RunOptions::default())
}

pub fn run_flow_with(scenario: &FlowScenario, cfg: &StepperConfig, opts: &RunOptions) -> Result<FlowRun, FlowError> {
    cfg.validate()?;
    let (flow, initial) = scenario.build()?;
    let flow = flow.as_ref();
    let reference = flow.evolved(&initial);
    let (mut state, mut series, mut quiet) = match &opts.resume {
        Some(cp) => {
            cp.check(&initial)?;
            (cp.state.clone(), cp.series.clone(), cp.quiet_steps)
        }
        None => {
            let d = diagnose(flow, &initial, cfg.geometry_points, &reference)?;
            (initial, vec![d], 0)
        }
    };
    let done = |series, termination, state| Ok(FlowRun { series, termination, state });
    loop {
        if state.time >= cfg.t_max {
            return done(series, Termination::TMax { t: state.time }, state);
        }
        let mut dt = choose_dt(flow, &state, cfg);
        // snap to t_max instead of leaving a round-off sized last step
        let clamped = state.time + dt >= cfg.t_max - 1e-9 * dt;
        if clamped {
            dt = cfg.t_max - state.time;
        } else if dt < cfg.min_dt {
            let t = state.time;
            let termination = Termination::Blowup {
                bracket: (t, t),
                crossing: None,
                location: None,
                value: f64::NAN,
                reason: format!("adaptive step {dt:e} below {:e}", cfg.min_dt),
            };
            return done(series, termination, state);
        }
        let mut next = flow.advance(&state, dt, cfg.scheme);
        next.time = if clamped { cfg.t_max } else { state.time + dt };
        next.step_count = state.step_count + 1;

        if let Some((i, v)) = violation(&flow.bounded(&next), cfg.blowup_bounds) {
            let (lo, hi) = effective_bounds(cfg.blowup_bounds);
            let level = if v.is_finite() && v > hi { hi } else { lo };
            let crossing = flow.crossing(&state, &next, dt, i, level).or_else(|| {
                let v0 = flow.bounded(&state)[i];
                (v.is_finite() && v > 0.0).then(|| {
                    let th = (level.ln() - v0.ln()) / (v.ln() - v0.ln());
                    state.time + th.clamp(0.0, 1.0) * dt
                })
            });
            let termination = Termination::Blowup {
                bracket: (state.time, next.time),
                crossing,
                location: location(&next, i),
                value: v,
                reason: if v.is_finite() && v > 0.0 { "bounds exceeded".into() } else { "positivity lost".into() },
            };
            return done(series, termination, state);
        }

        let tder = flow
            .evolved(&state)
            .iter()
            .zip(flow.evolved(&next))
            .map(|(a, b)| (b - a).abs() / dt)
            .fold(0.0, f64::max);
        quiet = if tder <= cfg.convergence_tol { quiet + 1 } else { 0 };
        state = next;
        let converged = quiet >= cfg.convergence_steps;
        let finished = converged || state.time >= cfg.t_max;
        if state.step_count % cfg.record_every as u64 == 0 || finished {
            let mut d = diagnose(flow, &state, cfg.geometry_points, &reference)?;
            d.time_derivative_sup = Some(tder);
            let ar = d.alpha_r_sup;
            series.push(d);
            if let Some(a) = ar.filter(|a| *a >= 0.5) {
                return done(series, Termination::EllipticityLost { t: state.time, alpha_r_sup: a }, state);
            }
        }
        if converged {
            return done(series, Termination::Converged { t: state.time }, state);
        }
        if state.time >= cfg.t_max {
            return done(series, Termination::TMax { t: state.time }, state);
        }
        if opts.checkpoint_every > 0 && state.step_count % opts.checkpoint_every == 0 {
            if let Some(p) = &opts.checkpoint_path {
                Checkpoint::new(&state, &series, quiet).write(p)?;
            }
        }
    }
}

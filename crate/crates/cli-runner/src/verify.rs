//! `verify`: identity suites and equation-of-motion reports.

use crate::config::{Fixture, RunConfig, ScenarioConfig, ScenarioKind};
use crate::error::CliError;
use crate::output::{worst, ScenarioDir};
use chart_geometry::{check_identities, BundleMetricField, IdentityId, MetricField, ScalarField};
use eom_verify::{eom_residuals, standard_points};
use geometry_scenarios::{make_abelian_hym_bundle, make_hym_bundle, make_iwasawa_metric, make_random_metric, random_points, IwasawaAnsatz};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_UNCONDITIONAL_TOL: f64 = 1e-8;
pub const DEFAULT_CONDITIONAL_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub identity: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub evaluations: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub scenario: String,
    pub seed: u64,
    pub metrics: usize,
    pub points_per_metric: usize,
    pub fixture: Fixture,
    pub unconditional: Vec<IdentityRow>,
    pub conditional: Vec<IdentityRow>,
    pub failures: Vec<String>,
}

/// The conditional fixture for the seed.
pub fn fixture_metric(fixture: Fixture, seed: u64, cutoff: i32, amplitude: f64, modes: usize) -> MetricField {
    let ansatz = IwasawaAnsatz::random(seed, cutoff, amplitude, modes);
    let mut m = make_iwasawa_metric(&ansatz);
    if fixture == Fixture::SabotagedIwasawa {
        // flip the sign of u in one base direction; the family flag stays
        m.g[4] = ScalarField::Fourier(ansatz.u).scaled(C64::new(-1.0, 0.0)).exp();
    }
    m
}

fn suite(
    metrics: &[(MetricField, Option<BundleMetricField>, Vec<[f64; 6]>)],
    ids: &[IdentityId],
    tol: f64,
) -> Result<Vec<IdentityRow>, CliError> {
    let per_metric: Vec<Vec<f64>> = metrics
        .par_iter()
        .map(|(m, h, pts)| {
            let mut w = vec![0.0; ids.len()];
            for p in pts {
                let r = check_identities(m, h.as_ref(), p, ids, 0.0)?;
                for (a, b) in w.iter_mut().zip(r) {
                    *a = worst(*a, b);
                }
            }
            Ok(w)
        })
        .collect::<Result<_, CliError>>()?;
    let evaluations = metrics.iter().map(|(_, _, p)| p.len()).sum();
    Ok(ids
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let max_residual = per_metric.iter().map(|w| w[k]).fold(0.0, worst);
            IdentityRow { identity: id.name().into(), max_residual, tolerance: tol, evaluations, passed: max_residual <= tol }
        })
        .collect())
}

pub fn run_identity_suite(cfg: &RunConfig, s: &ScenarioConfig, dir: &ScenarioDir) -> Result<String, CliError> {
    let seed = cfg.seed_of(s);
    let g = &s.geometry;
    let count = g.metrics.unwrap_or(100);
    let npts = g.points.unwrap_or(20);
    let cutoff = g.cutoff.unwrap_or(2);
    let fixture = g.fixture.unwrap_or_default();
    let tol_u = s.tolerance.unconditional.unwrap_or(DEFAULT_UNCONDITIONAL_TOL);
    let tol_c = s.tolerance.conditional.unwrap_or(DEFAULT_CONDITIONAL_TOL);

    let random: Vec<_> = (0..count as u64)
        .map(|i| {
            let m = make_random_metric(seed.wrapping_add(i), cutoff, g.amplitude.unwrap_or(0.05)).0;
            (m, None, random_points(seed.wrapping_add(10_000 + i), npts))
        })
        .collect();
    let unconditional = suite(&random, &IdentityId::UNCONDITIONAL, tol_u)?;

    let fields: Vec<_> = (0..count.min(20) as u64)
        .map(|i| {
            let m = fixture_metric(fixture, seed.wrapping_add(i), cutoff, 0.8, g.modes.unwrap_or(4));
            let h = make_hym_bundle(seed.wrapping_add(i), 0.5);
            (m, Some(h), random_points(seed.wrapping_add(20_000 + i), npts))
        })
        .collect();
    let mut ids = IdentityId::CONDITIONAL.to_vec();
    ids.push(IdentityId::HymResidual);
    let conditional = suite(&fields, &ids, tol_c)?;

    let failures: Vec<String> =
        unconditional.iter().chain(&conditional).filter(|r| !r.passed).map(|r| r.identity.clone()).collect();
    let report = SuiteReport {
        scenario: s.name.clone(),
        seed,
        metrics: count,
        points_per_metric: npts,
        fixture,
        unconditional,
        conditional,
        failures: failures.clone(),
    };
    dir.write_json("identities.json", &report)?;
    let mut text = String::new();
    for r in report.unconditional.iter().chain(&report.conditional) {
        text += &format!("{:<22} {:>12.3e}  {}\n", r.identity, r.max_residual, if r.passed { "ok" } else { "FAIL" });
    }
    dir.write_text("identities.txt", &text)?;
    if failures.is_empty() {
        Ok(format!("{}: all identities within tolerance", s.name))
    } else {
        Err(CliError::Tolerance(format!("{}: identities above tolerance: {}", s.name, failures.join(", "))))
    }
}

pub fn run_eom_report(cfg: &RunConfig, s: &ScenarioConfig, dir: &ScenarioDir) -> Result<String, CliError> {
    let seed = cfg.seed_of(s);
    let g = &s.geometry;
    let m = fixture_metric(g.fixture.unwrap_or_default(), seed, g.cutoff.unwrap_or(2), g.amplitude.unwrap_or(0.8), g.modes.unwrap_or(4));
    let h = make_abelian_hym_bundle(seed, 0.5);
    let alpha = s.physics.alpha_prime.unwrap_or(0.0);
    let points = match g.points {
        Some(n) => random_points(seed, n),
        None => standard_points(&m, seed),
    };
    let report = eom_residuals(&m, &h, alpha, &points)?.with_scenario(s.name.clone());
    dir.write_json("eom.json", &report.to_json())?;
    dir.write_text("eom.txt", &report.table())?;
    let tol = s.tolerance.conditional.unwrap_or(DEFAULT_CONDITIONAL_TOL);
    let r = report.max_residual();
    if r <= tol {
        Ok(format!("{}: max residual {r:.3e} over {} points", s.name, points.len()))
    } else {
        Err(CliError::Tolerance(format!("{}: equation-of-motion residual {r:.3e} above {tol:e}", s.name)))
    }
}

pub fn run(cfg: &RunConfig, s: &ScenarioConfig, dir: &ScenarioDir) -> Result<String, CliError> {
    match s.kind {
        ScenarioKind::IdentitySuite => run_identity_suite(cfg, s, dir),
        ScenarioKind::EomReport => run_eom_report(cfg, s, dir),
        k => Err(CliError::Usage(format!("`{}` is not a verify scenario", k.name()))),
    }
}

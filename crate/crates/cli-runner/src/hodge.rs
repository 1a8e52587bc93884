//! `hodge`: secondary classes, the Aeppli representative and its checks.

use crate::config::{BundleChoice, HodgeReference, RunConfig, ScenarioConfig};
use crate::error::CliError;
use crate::output::{worst, ScenarioDir};
use chart_geometry::forms::trace_wedge;
use chart_geometry::identities::trace_rr;
use chart_geometry::tensor::VTensor;
use chart_geometry::{BundleCurvature, BundleMetricField, ConnectionKind, MetricField, PointGeometry};
use geometry_scenarios::{make_hym_bundle, make_planar_bundle, make_planar_metric, random_points};
use hodge_spectral::secondary::{aeppli_trivial_residual, kahler_form, DEFAULT_QUADRATURE};
use hodge_spectral::{aeppli_representative, i_ddbar, AeppliRepresentative, Grid, SpectralForm};
use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_GRID: usize = 12;
pub const DEFAULT_AMPLITUDE: f64 = 0.02;
pub const DEFAULT_ALPHA_PRIME: f64 = 0.5;

/// Points at which the form dumps are sampled.
pub const DUMP_POINTS: [[f64; 6]; 3] =
    [[0.0; 6], [0.25, 0.5, 0.125, 0.75, 0.0, 0.0], [0.6, 0.3, 0.9, 0.45, 0.0, 0.0]];

const PAIRS: [[usize; 2]; 3] = [[0, 1], [0, 2], [1, 2]];

fn components_22(t: &VTensor) -> Vec<C64> {
    let mut out = Vec::with_capacity(9);
    for i in &PAIRS {
        for j in &PAIRS {
            out.push(*t.at(&[i[0], i[1], 3 + j[0], 3 + j[1]]));
        }
    }
    out
}

fn form_22(f: &SpectralForm, x: &[f64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(9);
    for i in &PAIRS {
        for j in &PAIRS {
            out.push(f.component_at(i, j, x));
        }
    }
    out
}

fn direct_rr(m: &MetricField, x: &[f64]) -> Result<Vec<C64>, CliError> {
    let pg = PointGeometry::from_metric(m, x, 2)?;
    Ok(components_22(&trace_rr(&pg, ConnectionKind::Chern, 0..3)))
}

fn direct_ff(h: &BundleMetricField, x: &[f64]) -> Result<Vec<C64>, CliError> {
    let b = BundleCurvature::from_jets(h.rank, 3, h.matrix_jets(x, 2))?;
    Ok(components_22(&trace_wedge(&b.f, &b.f, 0..b.r).values()))
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, worst)
}

pub fn dump(f: &SpectralForm) -> Value {
    let samples: Vec<Value> = DUMP_POINTS.iter().map(|x| json!({ "point": x, "value": f.to_json_at(x) })).collect();
    json!({
        "bidegree": [f.p, f.q],
        "grid": f.grid.shape,
        "max_abs": f.max_abs(),
        "samples": samples,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceSummary {
    pub metric_seed: Option<u64>,
    pub bundle_seed: Option<u64>,
    pub r2_metric_max_abs: f64,
    pub r2_bundle_max_abs: f64,
    pub beta_hat_max_abs: f64,
    /// `i∂∂̄R₂[g,ĝ]` against `Tr R∧R − Tr R̂∧R̂` from the pointwise curvature.
    pub ddbar_r2_metric_residual: f64,
    pub ddbar_r2_bundle_residual: f64,
    /// `i∂∂̄` of the representative against `i∂∂̄ω − α′(Tr R∧R − Tr F∧F)`.
    pub ddbar_aeppli_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeSummary {
    pub scenario: String,
    pub seed: u64,
    pub alpha_prime: f64,
    pub grid: usize,
    pub quadrature: usize,
    pub reference: HodgeReference,
    pub bundle: BundleChoice,
    pub references: Vec<ReferenceSummary>,
    pub ddbar_residual: f64,
    /// Distance of the difference of two representatives from `Im ∂ ⊕ Im ∂̄`.
    pub independence_residual: Option<f64>,
    pub independence_difference_norm: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

type Pair = (MetricField, BundleMetricField, Option<u64>, Option<u64>);

fn bundle(choice: BundleChoice, seed: u64, amp: f64) -> BundleMetricField {
    match choice {
        BundleChoice::Planar => make_planar_bundle(seed, amp),
        BundleChoice::Hym => make_hym_bundle(seed, 0.5),
    }
}

pub fn run(cfg: &RunConfig, s: &ScenarioConfig, dir: &ScenarioDir) -> Result<String, CliError> {
    let seed = cfg.seed_of(s);
    let n = s.geometry.grid.unwrap_or(DEFAULT_GRID);
    let amp = s.geometry.amplitude.unwrap_or(DEFAULT_AMPLITUDE);
    let quad = s.geometry.quadrature.unwrap_or(DEFAULT_QUADRATURE);
    let alpha = s.physics.alpha_prime.unwrap_or(DEFAULT_ALPHA_PRIME);
    let tol = s.tolerance.hodge.unwrap_or(DEFAULT_TOL);
    let reference = s.hodge.reference.unwrap_or_default();
    let choice = s.hodge.bundle.unwrap_or_default();
    let grid = Grid::on_first(2, n);

    let g = make_planar_metric(seed, amp).0;
    let h = bundle(choice, seed.wrapping_add(1), amp);
    let refs: Vec<Pair> = match reference {
        HodgeReference::Same => vec![(g.clone(), h.clone(), None, None)],
        HodgeReference::Flat => vec![(MetricField::flat(3), h.clone(), None, None)],
        HodgeReference::Random => {
            let seeds = s.hodge.reference_seeds.clone().unwrap_or_else(|| vec![13, 15]);
            seeds
                .iter()
                .map(|&r| (make_planar_metric(r, amp).0, bundle(choice, r + 1, amp), Some(r), Some(r + 1)))
                .collect()
        }
    };
    let reps: Vec<AeppliRepresentative> = refs
        .iter()
        .map(|(gh, hh, _, _)| aeppli_representative(&g, &h, gh, hh, alpha, quad, grid))
        .collect::<Result<_, _>>()?;

    let pts = random_points(seed.wrapping_add(7), 6);
    let ddw = i_ddbar(&kahler_form(grid, &g));
    let a = C64::new(alpha, 0.0);
    let mut summaries = Vec::new();
    for ((gh, hh, ms, bs), rep) in refs.iter().zip(&reps) {
        let (dg, dh, da) = (i_ddbar(&rep.r2_metric), i_ddbar(&rep.r2_bundle), i_ddbar(&rep.form));
        let (mut eg, mut eh, mut ea) = (0.0, 0.0, 0.0);
        for x in &pts {
            let (rr, rrh) = (direct_rr(&g, x)?, direct_rr(gh, x)?);
            let (ff, ffh) = (direct_ff(&h, x)?, direct_ff(hh, x)?);
            let drr: Vec<C64> = rr.iter().zip(&rrh).map(|(u, v)| u - v).collect();
            let dff: Vec<C64> = ff.iter().zip(&ffh).map(|(u, v)| u - v).collect();
            eg = worst(eg, max_diff(&drr, &form_22(&dg, x)));
            eh = worst(eh, max_diff(&dff, &form_22(&dh, x)));
            let w = form_22(&ddw, x);
            let expect: Vec<C64> = (0..9).map(|c| w[c] - (rr[c] - ff[c]) * a).collect();
            ea = worst(ea, max_diff(&expect, &form_22(&da, x)));
        }
        summaries.push(ReferenceSummary {
            metric_seed: *ms,
            bundle_seed: *bs,
            r2_metric_max_abs: rep.r2_metric.max_abs(),
            r2_bundle_max_abs: rep.r2_bundle.max_abs(),
            beta_hat_max_abs: rep.beta_hat.max_abs(),
            ddbar_r2_metric_residual: eg,
            ddbar_r2_bundle_residual: eh,
            ddbar_aeppli_residual: ea,
        });
    }
    let ddbar_residual = summaries
        .iter()
        .flat_map(|r| [r.ddbar_r2_metric_residual, r.ddbar_r2_bundle_residual, r.ddbar_aeppli_residual])
        .fold(0.0, worst);
    let (mut ind, mut ind_norm) = (None, None);
    for k in 1..reps.len() {
        let diff = reps[0].form.sub(&reps[k].form);
        ind = Some(worst(ind.unwrap_or(0.0), aeppli_trivial_residual(&diff)));
        ind_norm = Some(worst(ind_norm.unwrap_or(0.0), diff.norm()));
    }
    let passed = ddbar_residual <= tol && ind.is_none_or(|r| r <= tol);
    let summary = HodgeSummary {
        scenario: s.name.clone(),
        seed,
        alpha_prime: alpha,
        grid: n,
        quadrature: quad,
        reference,
        bundle: choice,
        references: summaries,
        ddbar_residual,
        independence_residual: ind,
        independence_difference_norm: ind_norm,
        tolerance: tol,
        passed,
    };
    let first = &reps[0];
    dir.write_json("r2_metric.json", &dump(&first.r2_metric))?;
    dir.write_json("r2_bundle.json", &dump(&first.r2_bundle))?;
    dir.write_json("beta_hat.json", &dump(&first.beta_hat))?;
    dir.write_json("aeppli.json", &dump(&first.form))?;
    dir.write_json("summary.json", &summary)?;
    let ind_text = ind.map(|r| format!(", independence {r:.3e}")).unwrap_or_default();
    let line = format!("{}: i∂∂̄ residual {ddbar_residual:.3e}{ind_text}", s.name);
    if passed {
        Ok(line)
    } else {
        Err(CliError::Tolerance(format!("{line} above {tol:e}")))
    }
}

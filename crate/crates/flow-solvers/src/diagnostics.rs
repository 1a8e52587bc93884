use crate::error::FlowError;
use serde::{Deserialize, Serialize};
use std::io::Write;

pub const CSV_HEADER: [&str; 7] =
    ["t", "min_Omega", "mean_Omega", "max_Omega", "balanced_residual", "alpha_R_sup", "h_est_ratio"];

/// One record of a flow run. Fields that a reduction cannot reconstruct are
/// `None` and print as empty CSV cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowDiagnostics {
    pub t: f64,
    pub step: u64,
    pub min_omega: f64,
    pub mean_omega: f64,
    pub max_omega: f64,
    /// Sup of `|d(|Ω|_ω ω²)|` over the sample points.
    pub balanced_residual: Option<f64>,
    /// Sup of `|α′ R^Ch|` over the sample points.
    pub alpha_r_sup: Option<f64>,
    /// Sup of `(|H| + |∇H|)/√α′` over the sample points.
    pub h_est_ratio: Option<f64>,
    /// Sup of the discrete time derivative of the evolved scalar over the last step.
    pub time_derivative_sup: Option<f64>,
    /// Sup of the evolved scalar relative to its initial value (`ω ≤ C₁ω₀`).
    pub omega_growth: f64,
    /// Sup of `|∇ log|Ω|_ω|` in the flat metric.
    pub grad_log_omega_sup: f64,
}

impl FlowDiagnostics {
    pub fn is_finite(&self) -> bool {
        let opt = |o: Option<f64>| o.is_none_or(f64::is_finite);
        [self.t, self.min_omega, self.mean_omega, self.max_omega, self.omega_growth, self.grad_log_omega_sup]
            .iter()
            .all(|v| v.is_finite())
            && opt(self.balanced_residual)
            && opt(self.alpha_r_sup)
            && opt(self.h_est_ratio)
            && opt(self.time_derivative_sup)
    }

    fn row(&self) -> [String; 7] {
        let f = |o: Option<f64>| o.map(|v| v.to_string()).unwrap_or_default();
        [
            self.t.to_string(),
            self.min_omega.to_string(),
            self.mean_omega.to_string(),
            self.max_omega.to_string(),
            f(self.balanced_residual),
            f(self.alpha_r_sup),
            f(self.h_est_ratio),
        ]
    }
}

pub fn write_csv<W: Write>(series: &[FlowDiagnostics], out: W) -> Result<(), FlowError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for d in series {
        w.write_record(d.row())?;
    }
    w.flush()?;
    Ok(())
}

/// Deterministic, well-spread points of the 6-torus for pointwise diagnostics.
pub fn sample_points(count: usize) -> Vec<[f64; 6]> {
    const STEP: [f64; 6] = [0.618_034, 0.414_214, 0.732_051, 0.236_068, 0.645_751, 0.316_625];
    (0..count)
        .map(|j| std::array::from_fn(|a| (0.137 + (j + 1) as f64 * STEP[a]).fract()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_cells_for_missing_fields() {
        let d = FlowDiagnostics {
            t: 0.5,
            step: 3,
            min_omega: 1.0,
            mean_omega: 1.0,
            max_omega: 1.0,
            balanced_residual: None,
            alpha_r_sup: Some(0.0),
            h_est_ratio: None,
            time_derivative_sup: None,
            omega_growth: 1.0,
            grad_log_omega_sup: 0.0,
        };
        let mut buf = Vec::new();
        write_csv(&[d], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "t,min_Omega,mean_Omega,max_Omega,balanced_residual,alpha_R_sup,h_est_ratio\n0.5,1,1,1,,0,\n");
    }
}

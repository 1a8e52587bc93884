//! Term-by-term checks of the heterotic field equations on conformally
//! balanced data, with `e^{−2Φ} = |Ω|_ω` and `H = i(∂ − ∂̄)ω`.

pub mod assemble;
pub mod error;
pub mod flow;
pub mod gap;
pub mod points;
pub mod report;

pub use assemble::{point_residuals, PointResiduals};
pub use error::EomError;
pub use flow::{flow_metric_rate, ricci_flow_defect, ricci_metric_rate};
pub use gap::{chern_to_hull_gap, chern_to_hull_parts, GapParts};
pub use points::standard_points;
pub use report::{eom_residuals, EomMetadata, EomResidualReport, BALANCED_TOL};

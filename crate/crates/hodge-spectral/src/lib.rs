//! Fourier-spectral exterior calculus on flat tori.
//!
//! Forms are dense coefficient grids; `∂`, `∂̄` and their adjoints are exact
//! multipliers, so the Kodaira–Spencer operator splits into one 9×9 block
//! per frequency and can be inverted directly.

pub mod dops;
pub mod error;
pub mod form;
pub mod grid;
pub mod kodaira;
pub mod secondary;
pub mod sqrt;
pub mod wedge;

pub use dops::{d_ops, del, delbar, i_ddbar, DOps, Part};
pub use error::HodgeError;
pub use form::SpectralForm;
pub use grid::Grid;
pub use kodaira::{kodaira_spencer_apply, solve_e, OperatorE, SolveReport};
pub use secondary::{aeppli_representative, chern_simons_chi, secondary_class_r2, AeppliRepresentative, MatrixSamples, SecondaryClass};
pub use sqrt::sqrt_metric_from_psi;
pub use wedge::wedge;

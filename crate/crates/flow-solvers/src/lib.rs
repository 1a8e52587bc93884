//! Time integrators for reduced anomaly flows.
//!
//! Each reduction evolves one scalar: `e^f` on a flat 2-torus, `e^u` on a
//! flat 4-torus (Fu–Yau and Iwasawa ansätze), or the frame scale `ρ` of a
//! left-invariant metric. Spatial fields are dense Fourier grids, so the
//! Laplacian is an exact multiplier and can be treated implicitly.

pub mod checkpoint;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod fuyau;
pub mod iwasawa;
pub mod lie;
pub mod run;
pub mod scenario;
pub mod state;
pub mod surface;
pub mod torus;

pub use checkpoint::Checkpoint;
pub use config::{Scheme, StepperConfig};
pub use diagnostics::{write_csv, FlowDiagnostics, CSV_HEADER};
pub use error::FlowError;
pub use fuyau::{step_fuyau_flow, FuYauFlow};
pub use iwasawa::{step_iwasawa_flow, IwasawaFlow};
pub use lie::{step_lie_flow, LieFlow};
pub use run::{run_flow, run_flow_with, FlowRun, RunOptions, Termination};
pub use scenario::FlowScenario;
pub use state::{FlowKind, FlowState};
pub use surface::{step_surface_flow, SurfaceFlow};
pub use torus::Torus;

//! Exact-derivative hermitian geometry on periodic charts.
//!
//! Fields are truncated Fourier series (or small expressions built from
//! them); every pointwise quantity is computed from Taylor jets in the
//! Wirtinger variables, so derivatives carry no discretisation error.

pub mod api;
pub mod bundle;
pub mod error;
pub mod field;
pub mod forms;
pub mod fourier;
pub mod identities;
pub mod jet;
pub mod local;
pub mod metric;
pub mod norms;
pub mod tensor;

pub use api::*;
pub use bundle::BundleCurvature;
pub use error::GeometryError;
pub use field::ScalarField;
pub use fourier::FourierScalarField;
pub use identities::{check_identities, check_identity, check_identity_with, IdentityId, PointGeometry};
pub use jet::Jet;
pub use local::{ConnectionKind, LocalGeometry};
pub use metric::{BundleMetricField, Family, Frame, MetricField};
pub use tensor::{IndexKind, IndexMarker, TensorValue, Variance};

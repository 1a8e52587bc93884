//! Generators for explicit metric families.

pub mod bundles;
pub mod fuyau;
pub mod iwasawa;
pub mod lie;
pub mod random;
pub mod surface;

pub use bundles::{make_abelian_hym_bundle, make_hym_bundle};
pub use fuyau::{make_fuyau_data, FuYauTorusData};
pub use iwasawa::{make_iwasawa_metric, make_twisted_iwasawa_metric, IwasawaAnsatz};
pub use lie::{lie_frame_flow_data, LieError, LieFlowData, LieFlowLaw, LieFrameAlgebra};
pub use random::{make_kahler_metric, make_planar_bundle, make_planar_metric, make_random_metric, random_points, RandomMetricReport};
pub use surface::SurfaceData;

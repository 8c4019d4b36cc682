//! Volume of unit vector fields on the unit sphere with its north and south
//! poles removed.
//!
//! The volume of a unit field `v` is the area of its image in the unit tangent
//! bundle, `∫ √(1 + γ² + δ²)` where `γ`, `δ` are the geodesic curvatures of
//! `v` and of its rotation `v⊥`. Writing `v = cos θ e1 + sin θ e2` this becomes
//! `∫ √(1 + (tan α + θ1)² + θ2²)`. Any such field whose larger pole index is
//! `k` has volume at least `π·L(ε_k)`, where `L(ε_k)` is the perimeter of the
//! ellipse with semi-axes `k` and `|k - 2|`; the fields `θ = (k-1)β` attain it.
//!
//! Every numerical routine is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`, the precision all
//! tolerances in [`QuadratureConfig::default`] are tuned for.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod curvature;
pub mod descriptor;
pub mod fields;
pub mod geometry;
pub mod quadrature;
pub mod scalar;

pub use analysis::{AnalysisError, Pole};
pub use fields::FieldError;
pub use quadrature::QuadratureError;
pub use scalar::Scalar;

pub type SphericalPoint = geometry::SphericalPoint<f64>;
pub type UnitField = fields::UnitField<f64>;
pub type GridField = fields::GridField<f64>;
pub type BumpSpec = fields::BumpSpec<f64>;
pub type FrameAngles = fields::FrameAngles<f64>;
pub type CurvaturePair = curvature::CurvaturePair<f64>;
pub type QuadratureConfig = quadrature::QuadratureConfig<f64>;
pub type QuadratureResult = quadrature::QuadratureResult<f64>;
pub type IndexReport = analysis::IndexReport<f64>;
pub type BoundReport = analysis::BoundReport<f64>;
pub type StokesCheck = analysis::StokesCheck<f64>;
pub type SweepRow = analysis::SweepRow<f64>;

pub type SphericalPointF32 = geometry::SphericalPoint<f32>;
pub type UnitFieldF32 = fields::UnitField<f32>;
pub type QuadratureConfigF32 = quadrature::QuadratureConfig<f32>;

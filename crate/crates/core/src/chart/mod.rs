//! Coordinate charts, finite-difference derivatives and the curvature bundle
//! of a sampled metric.

pub mod bundle;
pub mod derivative;
pub mod field;
pub mod grid;
pub mod metric;
pub mod stencil;

pub use bundle::{bach_from_div_weyl, curvature_bundle, BundleOptions, BundleResiduals, CurvatureBundle, Retain};
pub use derivative::{
    christoffel, covariant_derivative, covariant_derivative_sym2, gradient, gradient_norm2, laplacian,
    theta_tensor, ThetaTensorField,
};
pub use field::Field;
pub use grid::{Axis, AxisKind, Chart, MIN_RESOLUTION};
pub use metric::MetricField;
pub use stencil::Stencil;

//! Example geometries with closed-form curvature: round spheres, flat tori,
//! products of spheres and seeded perturbations of the flat torus.

pub mod build;
pub mod compare;
pub mod oracle;
pub mod spec;

pub use build::{build, chart_for, factors, perturbation_modes, perturbed_metric, Factor, Geometry};
pub use compare::{convergence, oracle_compare, Convergence, OracleReport};
pub use oracle::AnalyticOracle;
pub use spec::{GeometryKind, GeometrySpec, DEFAULT_EXCISION_CELLS};

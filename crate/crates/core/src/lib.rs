//! Curvature tensors, discretized charts and pinching estimates for
//! Riemannian metrics in dimensions 4 through 8.

pub mod chart;
pub mod error;
pub mod estimates;
pub mod integral;
pub mod scalar;
pub mod tensor;
pub mod zoo;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Sym2F = tensor::Sym2<f64>;
pub type Alg4F = tensor::Alg4<f64>;
pub type Tensor3F = tensor::Tensor3<f64>;

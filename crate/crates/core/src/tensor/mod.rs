//! Pointwise tensor algebra: symmetric 2-tensors, algebraic curvature
//! tensors with declared symmetries, orthonormal frames and random sampling.

pub mod alg4;
pub mod dim;
pub mod frame;
pub mod sampling;
pub mod sym2;
pub mod tensor3;

pub use alg4::{cubic_weyl_form, inner, kulkarni_nomizu, norm2, weyl_from_riemann, Alg4, Symmetry};
pub use dim::{Dim, MAX_DIM, MIN_DIM};
pub use frame::Frame;
pub use sym2::{tracefree_project, Sym2};
pub use tensor3::Tensor3;

//! Pointwise curvature inequalities: the T/U/V splitting, the sharp
//! Weyl–Ricci estimate, the cubic Weyl bound, the θ coefficient, pinching
//! conditions and their grid-based Bochner and Kato counterparts.

pub mod batch;
pub mod cubic;
pub mod fields;
pub mod pinching;
pub mod report;
pub mod sharp;
pub mod theta;
pub mod tuv;

pub use batch::{random_sample, sample_cubic, sample_sharp, BatchSummary};
pub use cubic::{c_constant, c_squared_fraction, cubic_bound_check};
pub use fields::{
    einstein_residual, einstein_weyl_laplacian_residual, harmonic_residual, kato_checks, KatoCheck, KatoReport,
    WeylLaplacianResidual, FLAT_CURVATURE,
};
pub use pinching::{pointwise_pinching, pinching_chain, PinchingChainReport};
pub use report::{Comparison, EstimateReport, Witness};
pub use sharp::{combined_norm_residual, sharp_estimate, EstimateSample};
pub use theta::{theta_coefficient, theta_minimize, theta_minimize_on};
pub use tuv::{tuv_decompose, tuv_identity_residuals, TuvDecomposition};

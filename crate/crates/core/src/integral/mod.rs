//! Quadrature on chart grids and the integral identities, Yamabe
//! quotients and integral pinching conditions built on it.

pub mod constants;
pub mod hypotheses;
pub mod identities;
pub mod quadrature;
pub mod residual;
pub mod conditions;
pub mod yamabe;

pub use constants::{constants_table, ConstantName, ConstantsTable};
pub use hypotheses::{Hypotheses, HypothesisTolerances};
pub use identities::{compact_sym2_field, theta_identity_residual, ricci_theta_inequality, bach_flat_identity_residual, trig_sym2_field};
pub use quadrature::{excised_volume_fraction, integrate, integrate_all, integrate_with, Region, DEFAULT_MAX_EXCISED};
pub use residual::{empirical_order, IdentityResidual, RESIDUAL_FLOOR};
pub use conditions::{
    integral_conditions, gauss_bonnet_4d, quadratic_integrals, pointwise_pinching_field, bach_flat_integral_pinching, harmonic_integral_pinching,
    IntegralConditionsReport, GaussBonnet, QuadraticIntegrals,
};
pub use yamabe::{
    einstein_yamabe_combination, sobolev_check, yamabe_quotient, TrialFunction, YamabeEstimate, YamabeSource,
};

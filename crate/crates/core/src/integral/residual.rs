use crate::scalar::Real;

/// Denominator floor of [`IdentityResidual::rel_residual`].
pub const RESIDUAL_FLOOR: f64 = 1e-14;

/// Discrete check of an identity `lhs = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResidual<T> {
    pub lhs: T,
    pub rhs: T,
    pub abs_residual: T,
    /// `|lhs - rhs| / max(|lhs|, |rhs|, floor)`
    pub rel_residual: T,
    pub grid_spacing: Vec<T>,
}

impl<T: Real> IdentityResidual<T> {
    pub fn new(lhs: T, rhs: T, grid_spacing: Vec<T>) -> Self {
        let abs_residual = (lhs - rhs).abs();
        let denom = lhs.abs().max(rhs.abs()).max(T::lit(RESIDUAL_FLOOR));
        IdentityResidual { lhs, rhs, abs_residual, rel_residual: abs_residual / denom, grid_spacing }
    }
}

/// Empirical order `log(e_coarse / e_fine) / log(h_coarse / h_fine)`.
pub fn empirical_order<T: Real>(coarse: T, fine: T, h_coarse: T, h_fine: T) -> T {
    (coarse / fine).ln() / (h_coarse / h_fine).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_applies() {
        let r = IdentityResidual::new(0.0, 1e-16, vec![0.1]);
        assert_eq!(r.rel_residual, 1e-16 / RESIDUAL_FLOOR);
        let r = IdentityResidual::new(2.0, 1.0, vec![]);
        assert_eq!(r.rel_residual, 0.5);
        assert!((empirical_order(16.0_f64, 1.0, 2.0, 1.0) - 4.0).abs() < 1e-12);
    }
}

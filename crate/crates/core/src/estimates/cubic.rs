use super::report::EstimateReport;
use crate::error::Result;
use crate::scalar::Real;
use crate::tensor::{cubic_weyl_form, Alg4, Dim};

/// `C(n)²` as an exact fraction.
pub fn c_squared_fraction(dim: Dim) -> (u64, u64) {
    match dim.get() {
        4 => (3, 8),
        5 => (32, 45),
        6 => (35, 6),
        _ => (25, 4),
    }
}

/// Constant in `2W W W + W W W / 2 <= C(n) |W|³`:
/// `√6/4`, `4√10/15`, `√70/(2√3)` and `5/2` from `n = 7` on.
pub fn c_constant<T: Real>(dim: Dim) -> T {
    let (p, q) = c_squared_fraction(dim);
    T::lit((p as f64 / q as f64).sqrt())
}

/// Relative tolerance on `rhs` for the cubic bound.
pub const CUBIC_TOLERANCE: f64 = 1e-12;

/// Checks the cubic Weyl form against `C(n)|W|³` (orthonormal frame).
pub fn cubic_bound_check<T: Real>(w: &Alg4<T>) -> Result<EstimateReport<T>> {
    let lhs = cubic_weyl_form(w)?;
    let rhs = c_constant::<T>(w.dim()) * w.norm().powi(3);
    Ok(EstimateReport::at_most(lhs, rhs, T::lit(CUBIC_TOLERANCE) * rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let c = |n| c_constant::<f64>(Dim::new(n).unwrap());
        assert!((c(4) - 6f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((c(5) - 4.0 * 10f64.sqrt() / 15.0).abs() < 1e-15);
        assert!((c(6) - 70f64.sqrt() / (2.0 * 3f64.sqrt())).abs() < 1e-14);
        assert_eq!(c(7), 2.5);
        assert_eq!(c(8), 2.5);
    }
}

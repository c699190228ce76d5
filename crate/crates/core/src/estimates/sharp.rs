use super::report::EstimateReport;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{kulkarni_nomizu, Alg4, Sym2, Symmetry};

/// One pointwise configuration in an orthonormal frame.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateSample<T> {
    pub w: Alg4<T>,
    pub r0: Sym2<T>,
    pub r: T,
    pub rho: T,
    pub theta: T,
}

/// Relative tolerance on `rhs` for the sharp estimate.
pub const SHARP_TOLERANCE: f64 = 1e-12;

impl<T: Real> EstimateSample<T> {
    pub fn validate(&self) -> Result<()> {
        self.w.dim().same(self.r0.dim())?;
        self.w.require(Symmetry::WEYL)?;
        let tr = self.r0.trace();
        if tr.abs() > T::lit(1e-10) * self.r0.norm().max(T::one()) {
            return Err(Error::NotTracefree(tr.to_f64_lossy()));
        }
        Ok(())
    }

    /// `ρ / (√(2n)(n-2))`
    pub fn mixing(&self) -> T {
        let n = T::from_count(self.w.n());
        self.rho / ((T::lit(2.0) * n).sqrt() * (n - T::lit(2.0)))
    }

    /// `W + c R̊∧g` with `c` from [`Self::mixing`].
    pub fn combined(&self) -> Result<Alg4<T>> {
        let g = Sym2::identity(self.w.dim());
        self.w.axpy(self.mixing(), &kulkarni_nomizu(&self.r0, &g)?)
    }
}

/// `|-W(R̊, R̊) + ρ tr(R̊³)/(n-2)| <= √((n-2)/(2(n-1))) |W + c R̊∧g| |R̊|²`
pub fn sharp_estimate<T: Real>(s: &EstimateSample<T>) -> Result<EstimateReport<T>> {
    s.validate()?;
    let n = T::from_count(s.w.n());
    let two = T::lit(2.0);
    let lhs = (-s.w.quadratic_form(&s.r0, &s.r0) + s.rho / (n - two) * s.r0.trace_cube()).abs();
    let k = ((n - two) / (two * (n - T::one()))).sqrt();
    let rhs = k * s.combined()?.norm() * s.r0.norm2();
    Ok(EstimateReport::at_most(lhs, rhs, T::lit(SHARP_TOLERANCE) * rhs))
}

/// Relative residual of `|W + c R̊∧g|² = |W|² + 2ρ²|R̊|²/(n(n-2))`.
pub fn combined_norm_residual<T: Real>(s: &EstimateSample<T>) -> Result<T> {
    s.validate()?;
    let n = T::from_count(s.w.n());
    let lhs = s.combined()?.norm2();
    let rhs = s.w.norm2() + T::lit(2.0) * s.rho * s.rho / (n * (n - T::lit(2.0))) * s.r0.norm2();
    Ok((lhs - rhs).abs() / rhs.max(T::min_positive_value()))
}

use super::hypotheses::{Hypotheses, HypothesisTolerances};
use super::quadrature::{integrate_with, Region};
use crate::chart::derivative::contract_full;
use crate::chart::{gradient_norm2, Chart, CurvatureBundle, Field, MetricField, Stencil};
use crate::error::{Error, Result};
use crate::estimates::{c_constant, EstimateReport};
use crate::scalar::Real;

/// Scalar test function for the Yamabe quotient.
#[derive(Clone, Debug)]
pub struct TrialFunction<T> {
    pub u: Field<T>,
    pub description: String,
}

impl<T: Real> TrialFunction<T> {
    pub fn new(u: Field<T>, description: impl Into<String>) -> Result<Self> {
        if u.rank() != 0 {
            return Err(Error::InvalidGeometry("trial function must be scalar".into()));
        }
        if u.data().iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGeometry("trial function has non-finite values".into()));
        }
        if u.data().iter().all(|&x| x == T::zero()) {
            return Err(Error::InvalidGeometry("trial function vanishes identically".into()));
        }
        Ok(TrialFunction { u, description: description.into() })
    }

    pub fn constant(chart: &Chart<T>, c: T) -> Result<Self> {
        Self::new(Field::from_fn(chart, 0, |_, o| o[0] = c), format!("constant {c}"))
    }
}

/// Where a Yamabe value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YamabeSource {
    /// Closed form for the round sphere.
    ExactKnown,
    UserSupplied,
    /// Quotient of a trial function: an upper bound only.
    TrialFunction,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YamabeEstimate<T> {
    pub quotient: T,
    pub source: YamabeSource,
}

impl<T: Real> YamabeEstimate<T> {
    pub fn new(quotient: T, source: YamabeSource) -> Result<Self> {
        if !(quotient > T::zero()) || !quotient.is_finite() {
            return Err(Error::Precondition(format!("Yamabe value must be positive, got {quotient}")));
        }
        Ok(YamabeEstimate { quotient, source })
    }

    /// `false` when the value may overestimate the infimum.
    pub fn is_rigorous(&self) -> bool {
        self.source != YamabeSource::TrialFunction
    }
}

/// The three integrals of the Yamabe functional.
struct Functional<T> {
    dirichlet: T,
    potential: T,
    norm: T,
}

fn functional<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>, u: &TrialFunction<T>) -> Result<Functional<T>> {
    let n = T::from_count(m.chart().n());
    let st = Stencil::new(b.order)?;
    let du = gradient_norm2(m, &u.u, &st);
    let q = T::lit(2.0) * n / (n - T::lit(2.0));
    let dirichlet = integrate_with(m, Region::All, |p| Ok(du.scalar(p)))?;
    let potential = integrate_with(m, Region::All, |p| Ok(b.scalar.scalar(p) * u.u.scalar(p).powi(2)))?;
    let lq = integrate_with(m, Region::All, |p| Ok(u.u.scalar(p).abs().powf(q)))?;
    Ok(Functional { dirichlet, potential, norm: lq.powf((n - T::lit(2.0)) / n) })
}

/// `4(n-1)/(n-2) [∫|∇u|² + (n-2)/(4(n-1)) ∫Ru²] / (∫|u|^{2n/(n-2)})^{(n-2)/n}`
pub fn yamabe_quotient<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>, u: &TrialFunction<T>) -> Result<T> {
    let n = T::from_count(m.chart().n());
    let f = functional(m, b, u)?;
    if f.norm == T::zero() {
        return Err(Error::ZeroDenominator("Yamabe quotient"));
    }
    let a = T::lit(4.0) * (n - T::one()) / (n - T::lit(2.0));
    Ok((a * f.dirichlet + f.potential) / f.norm)
}

/// `(n-2)/(4(n-1)) Y ‖u‖² <= ∫|∇u|² + (n-2)/(4(n-1)) ∫Ru²`
pub fn sobolev_check<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    u: &TrialFunction<T>,
    y: &YamabeEstimate<T>,
    tolerance: T,
) -> Result<EstimateReport<T>> {
    if !(y.quotient > T::zero()) {
        return Err(Error::Precondition("Yamabe value must be positive".into()));
    }
    if !Hypotheses::measure(m, b).has_positive_scalar() {
        return Err(Error::Precondition("scalar curvature must be positive".into()));
    }
    let n = T::from_count(m.chart().n());
    let k = (n - T::lit(2.0)) / (T::lit(4.0) * (n - T::one()));
    let f = functional(m, b, u)?;
    let rhs = f.dirichlet + k * f.potential;
    Ok(EstimateReport::at_most(k * y.quotient * f.norm, rhs, tolerance * rhs.abs()))
}

/// Absolute floor of the Weyl-integral combination, relative to `Y ∫R|Ric|²`.
pub const COMBINATION_FLOOR: f64 = 1e-12;

/// Value of the Einstein Weyl-integral combination (expected `<= 0`),
/// compared against zero with relative `tolerance`.
pub fn einstein_yamabe_combination<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    y: &YamabeEstimate<T>,
    tol: &HypothesisTolerances<T>,
    tolerance: T,
) -> Result<EstimateReport<T>> {
    let h = Hypotheses::measure(m, b);
    if !h.is_einstein(tol) {
        return Err(Error::Precondition(format!("metric is not Einstein: relative |R̊| = {:.3e}", h.einstein.to_f64_lossy())));
    }
    if !h.has_positive_scalar() {
        return Err(Error::Precondition("scalar curvature must be positive".into()));
    }
    let chart = m.chart();
    let n = chart.n();
    let nf = T::from_count(n);
    let c = c_constant::<T>(chart.dim());
    let st = Stencil::new(b.order)?;
    let norm_w = b.weyl_norm2.map_scalar(chart, |v| v[0].max(T::zero()).sqrt());
    let grad = gradient_norm2(m, &norm_w, &st);
    let half_n = nf / T::lit(2.0);
    let wn = integrate_with(m, Region::Retained, |p| Ok(norm_w.scalar(p).powf(half_n)))?.powf(T::lit(2.0) / nf);
    let gw = integrate_with(m, Region::Retained, |p| Ok(grad.scalar(p)))?;
    let rw = integrate_with(m, Region::Retained, |p| Ok(b.scalar.scalar(p) * b.weyl_norm2.scalar(p)))?;
    let yq = y.quotient;
    let one = T::one();
    let two = T::lit(2.0);
    let first = ((nf + one) / (nf - one) * yq - T::lit(8.0) * (nf - one) / (nf - two) * c * wn) * gw;
    let second = (two / nf * yq - two * c * wn) * rw;
    let value = first + second;
    let ric2 = integrate_with(m, Region::Retained, |p| {
        Ok(b.scalar.scalar(p) * contract_full(n, 2, m.ginv().at(p), b.ric.at(p), b.ric.at(p)))
    })?;
    let floor = T::lit(COMBINATION_FLOOR) * yq * ric2;
    Ok(EstimateReport::at_most(value, T::zero(), tolerance * (first.abs() + second.abs()) + floor))
}

use crate::chart::derivative::contract_full;
use crate::chart::{CurvatureBundle, MetricField};
use crate::estimates::{einstein_residual, harmonic_residual, FLAT_CURVATURE};
use crate::scalar::Real;

/// Measured structural residuals of a discretized metric, each relative to
/// the curvature scale `max |Ric|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hypotheses<T> {
    /// `max |R̊| / max |Ric|`
    pub einstein: T,
    /// Codazzi defect of `Ric` plus `max |∇R|`, over `max |Ric|^{3/2}`.
    pub harmonic: T,
    /// `max |B| / max |Ric|²`
    pub bach: T,
    /// `(max R - min R) / max |R|`
    pub scalar_variation: T,
    pub min_scalar: T,
    pub max_scalar: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypothesisTolerances<T> {
    pub einstein: T,
    pub harmonic: T,
    pub bach: T,
    pub scalar_variation: T,
}

impl<T: Real> Default for HypothesisTolerances<T> {
    fn default() -> Self {
        HypothesisTolerances {
            einstein: T::lit(1e-2),
            harmonic: T::lit(1e-2),
            bach: T::lit(1e-6),
            scalar_variation: T::lit(1e-2),
        }
    }
}

impl<T: Real> Hypotheses<T> {
    pub fn measure(m: &MetricField<T>, b: &CurvatureBundle<T>) -> Self {
        let chart = m.chart();
        let n = chart.n();
        let retained: Vec<usize> = (0..chart.len()).filter(|&p| chart.is_retained(p) && m.is_regular(p)).collect();
        let ric = retained
            .iter()
            .map(|&p| contract_full(n, 2, m.ginv().at(p), b.ric.at(p), b.ric.at(p)).sqrt())
            .fold(T::zero(), T::max)
            .max(T::lit(FLAT_CURVATURE));
        let bach = retained
            .iter()
            .map(|&p| contract_full(n, 2, m.ginv().at(p), b.bach.at(p), b.bach.at(p)).sqrt())
            .fold(T::zero(), T::max);
        let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
        for p in (0..chart.len()).filter(|&p| m.is_regular(p)) {
            let r = b.scalar.scalar(p);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let scale = lo.abs().max(hi.abs()).max(T::min_positive_value());
        Hypotheses {
            einstein: einstein_residual(m, b),
            harmonic: harmonic_residual(m, b),
            bach: bach / (ric * ric),
            scalar_variation: (hi - lo) / scale,
            min_scalar: lo,
            max_scalar: hi,
        }
    }

    pub fn is_einstein(&self, tol: &HypothesisTolerances<T>) -> bool {
        self.einstein <= tol.einstein
    }

    pub fn is_harmonic(&self, tol: &HypothesisTolerances<T>) -> bool {
        self.harmonic <= tol.harmonic
    }

    pub fn is_bach_flat(&self, tol: &HypothesisTolerances<T>) -> bool {
        self.bach <= tol.bach
    }

    pub fn has_constant_scalar(&self, tol: &HypothesisTolerances<T>) -> bool {
        self.scalar_variation <= tol.scalar_variation
    }

    /// Rounding-level scalar curvature on a flat metric does not count.
    pub fn has_positive_scalar(&self) -> bool {
        self.min_scalar > T::lit(FLAT_CURVATURE)
    }
}

use std::f64::consts::PI;

use super::hypotheses::{Hypotheses, HypothesisTolerances};
use super::quadrature::{integrate_with, Region};
use super::residual::IdentityResidual;
use super::yamabe::YamabeEstimate;
use crate::chart::derivative::contract_full;
use crate::chart::{CurvatureBundle, MetricField};
use crate::error::{Error, Result};
use crate::estimates::{pointwise_pinching, EstimateReport, Witness};
use crate::scalar::Real;
use crate::tensor::Symmetry;

fn require_dim(n: usize, ok: bool, what: &str) -> Result<()> {
    if !ok {
        return Err(Error::Precondition(format!("{what} is not defined for n = {n}")));
    }
    Ok(())
}

fn require_bach_flat_constant<T: Real>(h: &Hypotheses<T>, tol: &HypothesisTolerances<T>) -> Result<()> {
    if !h.has_positive_scalar() {
        return Err(Error::Precondition(format!("scalar curvature must be positive, min R = {}", h.min_scalar)));
    }
    if !h.has_constant_scalar(tol) {
        return Err(Error::Precondition(format!(
            "scalar curvature is not constant: relative variation {:.3e}",
            h.scalar_variation.to_f64_lossy()
        )));
    }
    if !h.is_bach_flat(tol) {
        return Err(Error::Precondition(format!(
            "metric is not Bach-flat: max |B| / max |Ric|² = {:.3e}",
            h.bach.to_f64_lossy()
        )));
    }
    Ok(())
}

fn r0_norm2<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>, p: usize) -> T {
    contract_full(m.chart().n(), 2, m.ginv().at(p), b.ric0.at(p), b.ric0.at(p))
}

/// Pointwise pinching in dimension four at every grid point; the report
/// carries the point of smallest slack.
pub fn pointwise_pinching_field<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    tol: &HypothesisTolerances<T>,
    margin: T,
) -> Result<EstimateReport<T>> {
    let n = m.chart().n();
    require_dim(n, n == 4, "the pointwise pinching condition")?;
    require_bach_flat_constant(&Hypotheses::measure(m, b), tol)?;
    let weyl = b
        .weyl
        .as_ref()
        .ok_or_else(|| Error::Precondition("the Weyl field is only kept by bundles built with Retain::Full".into()))?;
    let mut worst: Option<EstimateReport<T>> = None;
    for p in (0..m.chart().len()).filter(|&p| m.is_regular(p)) {
        let rep = pointwise_pinching(
            &weyl.alg4(p, Symmetry::WEYL),
            &b.ric0.sym2(p),
            b.scalar.scalar(p),
            &m.g_at(p),
            margin,
        )?
        .with_witness(Witness::Point(p));
        worst = Some(match worst {
            Some(w) => w.worse(rep),
            None => rep,
        });
    }
    let mut rep = worst.ok_or_else(|| Error::InvalidGeometry("no regular grid points".into()))?;
    // A single violating point violates the pointwise hypothesis.
    rep.satisfied = rep.lhs < rep.rhs - margin;
    Ok(rep)
}

/// Integral pinching for Bach-flat metrics with constant positive scalar
/// curvature in dimensions four to six.
pub fn bach_flat_integral_pinching<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    y: &YamabeEstimate<T>,
    tol: &HypothesisTolerances<T>,
    margin: T,
) -> Result<EstimateReport<T>> {
    let n = m.chart().n();
    require_dim(n, (4..=6).contains(&n), "the integral Bach-flat pinching")?;
    require_bach_flat_constant(&Hypotheses::measure(m, b), tol)?;
    let nf = T::from_count(n);
    let two = T::lit(2.0);
    let c = nf.sqrt() / (T::lit(8.0).sqrt() * (nf - two));
    let kn = T::lit(4.0) * (nf - two) * c * c;
    let half_n = nf / two;
    let lhs = integrate_with(m, Region::All, |p| {
        Ok((b.weyl_norm2.scalar(p) + kn * r0_norm2(m, b, p)).max(T::zero()).powf(half_n / two))
    })?
    .powf(two / nf);
    let k = if n == 6 {
        T::lit(21.0 / 10.0).sqrt() / T::lit(25.0)
    } else {
        ((nf - two) / (two * (nf - T::one()))).sqrt() / T::lit(4.0)
    };
    Ok(EstimateReport::below(lhs, k * y.quotient, margin))
}

/// `∫|W + R̊∧g/√2|² < (25/486) Y²` for harmonic curvature in dimension four.
pub fn harmonic_integral_pinching<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    y: &YamabeEstimate<T>,
    tol: &HypothesisTolerances<T>,
    margin: T,
) -> Result<EstimateReport<T>> {
    let n = m.chart().n();
    require_dim(n, n == 4, "the harmonic-curvature pinching")?;
    let h = Hypotheses::measure(m, b);
    if !h.is_harmonic(tol) {
        return Err(Error::Precondition(format!(
            "curvature is not harmonic: Codazzi residual {:.3e} exceeds {:.3e}",
            h.harmonic.to_f64_lossy(),
            tol.harmonic.to_f64_lossy()
        )));
    }
    if !h.has_positive_scalar() {
        return Err(Error::Precondition("scalar curvature must be positive".into()));
    }
    let lhs = integrate_with(m, Region::All, |p| Ok(b.weyl_norm2.scalar(p) + T::lit(4.0) * r0_norm2(m, b, p)))?;
    let rhs = T::lit(25.0) / T::lit(486.0) * y.quotient * y.quotient;
    Ok(EstimateReport::below(lhs, rhs, margin))
}

/// The curvature integrals entering the four-dimensional formulas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticIntegrals<T> {
    pub weyl: T,
    pub ricci0: T,
    pub scalar: T,
}

pub fn quadratic_integrals<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>) -> Result<QuadraticIntegrals<T>> {
    Ok(QuadraticIntegrals {
        weyl: integrate_with(m, Region::All, |p| Ok(b.weyl_norm2.scalar(p)))?,
        ricci0: integrate_with(m, Region::All, |p| Ok(r0_norm2(m, b, p)))?,
        scalar: integrate_with(m, Region::All, |p| Ok(b.scalar.scalar(p).powi(2)))?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussBonnet<T> {
    pub chi: T,
    pub chi_rounded: i64,
    /// `∫|R̊|²` against `∫(|W|²/2 + R²/12) - 16π²χ` with the rounded `χ`.
    pub rearrangement: IdentityResidual<T>,
    /// Rearrangement residual over `∫(|W|²/2 + R²/12)`.
    pub rearrangement_relative: T,
}

/// Euler characteristic of a closed 4-manifold from its curvature integrals.
pub fn gauss_bonnet_4d<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>) -> Result<GaussBonnet<T>> {
    let n = m.chart().n();
    require_dim(n, n == 4, "the Gauss–Bonnet integrand")?;
    let q = quadratic_integrals(m, b)?;
    let pi2 = T::lit(PI * PI);
    let chi = (q.weyl - T::lit(2.0) * q.ricci0 + q.scalar / T::lit(6.0)) / (T::lit(32.0) * pi2);
    let chi_rounded = chi.round().to_i64().unwrap_or(0);
    let terms = q.weyl / T::lit(2.0) + q.scalar / T::lit(12.0);
    let rhs = terms - T::lit(16.0) * pi2 * T::lit(chi_rounded as f64);
    let rearrangement = IdentityResidual::new(q.ricci0, rhs, m.chart().spacing());
    let rearrangement_relative = rearrangement.abs_residual / terms.abs().max(T::lit(super::RESIDUAL_FLOOR));
    Ok(GaussBonnet { chi, chi_rounded, rearrangement, rearrangement_relative })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralConditionsReport<T> {
    pub integrals: QuadraticIntegrals<T>,
    pub chi: T,
    pub chi_rounded: i64,
    /// `∫|W|² + (5/4)|R̊|² <= (1/48)∫R²`
    pub bach_flat_condition: EstimateReport<T>,
    /// `∫|W|² + (374/81)|R̊|² <= (25/486)∫R²`
    pub harmonic_condition: EstimateReport<T>,
    /// `(13/8)∫|W|² + (1/12)∫R² <= 20π²χ`
    pub bach_flat_euler: EstimateReport<T>,
    /// `(268/81)∫|W|² + (1/3)∫R² <= (5984/81)π²χ`
    pub harmonic_euler: EstimateReport<T>,
    /// Both Euler forms agree with the direct forms when `χ` is the
    /// Gauss–Bonnet integral itself.
    pub forms_agree: bool,
    /// `∫(R² - 12|R̊|²) <= Y²`, when `Y` is known.
    pub yamabe_bound: Option<EstimateReport<T>>,
}

/// Four-dimensional integral conditions and their Euler-characteristic
/// rewrites. Non-strict comparisons accept `slack >= -tolerance · rhs`.
pub fn integral_conditions<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    y: Option<&YamabeEstimate<T>>,
    tolerance: T,
) -> Result<IntegralConditionsReport<T>> {
    let gb = gauss_bonnet_4d(m, b)?;
    let q = quadratic_integrals(m, b)?;
    let pi2 = T::lit(PI * PI);
    let f = |a: f64| T::lit(a);
    let le = |lhs: T, rhs: T| EstimateReport::at_most(lhs, rhs, tolerance * rhs.abs());
    let chi_int = T::lit(gb.chi_rounded as f64);
    let euler = |chi: T| {
        (
            le(f(13.0 / 8.0) * q.weyl + q.scalar / f(12.0), f(20.0) * pi2 * chi),
            le(f(268.0 / 81.0) * q.weyl + q.scalar / f(3.0), f(5984.0 / 81.0) * pi2 * chi),
        )
    };
    let bach_flat_condition = le(q.weyl + f(5.0 / 4.0) * q.ricci0, q.scalar / f(48.0));
    let harmonic_condition = le(q.weyl + f(374.0 / 81.0) * q.ricci0, f(25.0 / 486.0) * q.scalar);
    let (bach_flat_euler, harmonic_euler) = euler(chi_int);
    let agree = |a: &EstimateReport<T>, b: &EstimateReport<T>| {
        a.satisfied == b.satisfied || a.slack.abs() <= tolerance * a.rhs.abs() || b.slack.abs() <= tolerance * b.rhs.abs()
    };
    let (e1, e2) = euler(gb.chi);
    let forms_agree = agree(&bach_flat_condition, &e1) && agree(&harmonic_condition, &e2);
    let yamabe_bound = y.map(|y| le(q.scalar - f(12.0) * q.ricci0, y.quotient * y.quotient));
    Ok(IntegralConditionsReport {
        integrals: q,
        chi: gb.chi,
        chi_rounded: gb.chi_rounded,
        bach_flat_condition,
        harmonic_condition,
        bach_flat_euler,
        harmonic_euler,
        forms_agree,
        yamabe_bound,
    })
}

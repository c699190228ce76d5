use super::hypotheses::{Hypotheses, HypothesisTolerances};
use super::quadrature::{integrate_with, Region};
use super::residual::IdentityResidual;
use crate::chart::derivative::contract_full;
use crate::chart::{covariant_derivative_sym2, AxisKind, Chart, CurvatureBundle, Field, MetricField, Stencil};
use crate::error::{Error, Result};
use crate::estimates::EstimateReport;
use crate::scalar::Real;
use crate::tensor::{Frame, Sym2, Symmetry};
use crate::zoo::{perturbation_modes, perturbed_metric};

/// Symmetric 2-tensor field `δ + amplitude Σ A_m sin(k_m·x + φ_m)` with
/// seeded integer wave vectors; smooth on periodic charts.
pub fn trig_sym2_field<T: Real>(chart: &Chart<T>, seed: u64, modes: usize, amplitude: T) -> Field<T> {
    let dim = chart.dim();
    let modes = perturbation_modes::<T>(dim, seed, modes);
    let n = chart.n();
    Field::from_fn(chart, 2, |p, o| {
        let s = perturbed_metric(dim, amplitude, &modes, &chart.coords(p));
        for i in 0..n {
            for j in 0..n {
                o[i * n + j] = s.get(i, j);
            }
        }
    })
}

/// `trig_sym2_field` times a smooth bump supported at distance greater than
/// `cutoff` from both ends of every non-periodic axis, so boundary terms of
/// the retained region vanish.
pub fn compact_sym2_field<T: Real>(
    chart: &Chart<T>,
    seed: u64,
    modes: usize,
    amplitude: T,
    cutoff: T,
) -> Result<Field<T>> {
    let mut spans = Vec::with_capacity(chart.n());
    for (a, ax) in chart.axes().iter().enumerate() {
        if ax.kind == AxisKind::Periodic {
            spans.push(None);
            continue;
        }
        let excised = T::from_count(ax.margin) * ax.h();
        if !(cutoff >= excised && T::lit(2.0) * cutoff < ax.hi - ax.lo) {
            return Err(Error::Precondition(format!(
                "cutoff {cutoff:?} must cover the excised band {excised:?} of axis {a} and leave an interior"
            )));
        }
        spans.push(Some((ax.lo + cutoff, ax.hi - cutoff)));
    }
    let base = trig_sym2_field(chart, seed, modes, amplitude);
    Ok(Field::from_fn(chart, 2, |p, o| {
        let x = chart.coords(p);
        let w = spans.iter().zip(&x).fold(T::one(), |acc, (span, &t)| match span {
            Some((a, b)) => {
                let s = (T::lit(2.0) * t - *a - *b) / (*b - *a);
                if s.abs() < T::one() {
                    acc * (T::one() - T::one() / (T::one() - s * s)).exp()
                } else {
                    T::zero()
                }
            }
            None => acc,
        });
        for (o, &v) in o.iter_mut().zip(base.at(p)) {
            *o = w * v;
        }
    }))
}

/// `tr((g^{-1}A)³)`
fn trace_cube_with<T: Real>(n: usize, ginv: &[T], a: &[T]) -> T {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = (0..n).map(|k| ginv[i * n + k] * a[k * n + j]).sum();
        }
    }
    let mut t = T::zero();
    for i in 0..n {
        for j in 0..n {
            let m2: T = (0..n).map(|k| m[i * n + k] * m[k * n + j]).sum();
            t += m2 * m[j * n + i];
        }
    }
    t
}

fn require_weyl<T>(b: &CurvatureBundle<T>) -> Result<&Field<T>> {
    b.weyl
        .as_ref()
        .ok_or_else(|| Error::Precondition("the Weyl field is only kept by bundles built with Retain::Full".into()))
}

/// Integral identity for the θ-tensor of a symmetric 2-tensor field `φ`:
/// `∫ (θ²+1)|∇φ|² - |C_θ|²` against
/// `2θ ∫ |div φ|² + W(φ̊, φ̊) - n/(n-2) R̊φ̊φ̊ - R|φ̊|²/(n-1)`.
pub fn theta_identity_residual<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    phi: &Field<T>,
    theta: T,
) -> Result<IdentityResidual<T>> {
    let chart = m.chart();
    let n = chart.n();
    let nf = T::from_count(n);
    let st = Stencil::new(b.order)?;
    let weyl = require_weyl(b)?;
    let dphi = covariant_derivative_sym2(m, &b.gamma, phi, &st)?;
    let at = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let one = T::one();
    let lhs = integrate_with(m, Region::Retained, |p| {
        let d = Frame::orthonormal(&m.g_at(p))?.apply(dphi.at(p), 3);
        let mut grad = T::zero();
        let mut c2 = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    grad += d[at(i, j, k)] * d[at(i, j, k)];
                    let c = d[at(i, k, j)] - theta * d[at(j, k, i)];
                    c2 += c * c;
                }
            }
        }
        Ok((theta * theta + one) * grad - c2)
    })?;
    let rhs = integrate_with(m, Region::Retained, |p| {
        let frame = Frame::orthonormal(&m.g_at(p))?;
        let d = frame.apply(dphi.at(p), 3);
        let ph = frame.sym2(&phi.sym2(p));
        let ph0 = ph - Sym2::identity(ph.dim()) * (ph.trace() / nf);
        let w = frame.alg4(&weyl.alg4(p, Symmetry::WEYL));
        let r0 = frame.sym2(&b.ric0.sym2(p));
        let div2: T = (0..n).map(|k| (0..n).map(|i| d[at(i, i, k)]).sum::<T>().powi(2)).sum();
        let term = div2 + w.quadratic_form(&ph0, &ph0)
            - nf / (nf - T::lit(2.0)) * r0.dot(&ph0.square())
            - b.scalar.scalar(p) / (nf - one) * ph0.norm2();
        Ok(T::lit(2.0) * theta * term)
    })?;
    Ok(IdentityResidual::new(lhs, rhs, chart.spacing()))
}

/// Integrated Weyl–Ricci terms shared by the θ-inequality and the Bach-flat identity.
struct RicciTerms<T> {
    grad_r0: T,
    weyl: T,
    cube: T,
    scalar: T,
    grad_scalar: T,
}

fn ricci_terms<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>) -> Result<RicciTerms<T>> {
    let n = m.chart().n();
    let gi = |p: usize| m.ginv().at(p);
    let int = |f: &(dyn Fn(usize) -> T + Sync)| integrate_with(m, Region::Retained, |p| Ok(f(p)));
    Ok(RicciTerms {
        grad_r0: int(&|p| contract_full(n, 3, gi(p), b.grad_ric0.at(p), b.grad_ric0.at(p)))?,
        weyl: int(&|p| contract_full(n, 2, gi(p), b.weyl_ric.at(p), b.ric0.at(p)))?,
        cube: int(&|p| trace_cube_with(n, gi(p), b.ric0.at(p)))?,
        scalar: int(&|p| b.scalar.scalar(p) * contract_full(n, 2, gi(p), b.ric0.at(p), b.ric0.at(p)))?,
        grad_scalar: int(&|p| contract_full(n, 1, gi(p), b.grad_scalar.at(p), b.grad_scalar.at(p)))?,
    })
}

/// `∫|∇R̊|² >= 2θ/(θ²+1) ∫ W(R̊,R̊) - n/(n-2) tr R̊³ - R|R̊|²/(n-1) + (n-2)²|∇R|²/(4n²)`
/// for each `θ`.
pub fn ricci_theta_inequality<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    thetas: &[T],
    tolerance: T,
) -> Result<Vec<(T, EstimateReport<T>)>> {
    let nf = T::from_count(m.chart().n());
    let two = T::lit(2.0);
    let t = ricci_terms(m, b)?;
    let core = t.weyl - nf / (nf - two) * t.cube - t.scalar / (nf - T::one())
        + (nf - two).powi(2) / (T::lit(4.0) * nf * nf) * t.grad_scalar;
    Ok(thetas
        .iter()
        .map(|&th| {
            let k = two * th / (th * th + T::one());
            (th, EstimateReport::at_most(k * core, t.grad_r0, tolerance))
        })
        .collect())
}

/// Bach-flat identity
/// `∫|∇R̊|² = ∫ 2W(R̊,R̊) - n/(n-2) tr R̊³ - R|R̊|²/(n-1) + (n-2)²|∇R|²/(4n(n-1))`.
pub fn bach_flat_identity_residual<T: Real>(
    m: &MetricField<T>,
    b: &CurvatureBundle<T>,
    tol: &HypothesisTolerances<T>,
) -> Result<IdentityResidual<T>> {
    let h = Hypotheses::measure(m, b);
    if !h.is_bach_flat(tol) {
        return Err(Error::Precondition(format!(
            "metric is not Bach-flat: max |B| / max |Ric|² = {:.3e} exceeds {:.3e}",
            h.bach.to_f64_lossy(),
            tol.bach.to_f64_lossy()
        )));
    }
    let nf = T::from_count(m.chart().n());
    let two = T::lit(2.0);
    let t = ricci_terms(m, b)?;
    let rhs = two * t.weyl - nf / (nf - two) * t.cube - t.scalar / (nf - T::one())
        + (nf - two).powi(2) / (T::lit(4.0) * nf * (nf - T::one())) * t.grad_scalar;
    Ok(IdentityResidual::new(t.grad_r0, rhs, m.chart().spacing()))
}

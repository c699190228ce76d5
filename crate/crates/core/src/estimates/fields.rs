use super::report::{EstimateReport, Witness};
use crate::chart::derivative::contract_full;
use crate::chart::{gradient_norm2, laplacian, CurvatureBundle, Field, MetricField, Stencil};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{cubic_weyl_form, Frame, Symmetry};

/// Default relative tolerance for the Einstein and harmonic-curvature
/// hypotheses on a discretized metric.
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-2;

/// Curvature scale below which a metric counts as flat; relative
/// hypothesis residuals are taken against at least this scale.
pub const FLAT_CURVATURE: f64 = 1e-12;

/// Relative threshold below which `|W|` or `|R̊|` points are skipped.
pub const KATO_EXCLUSION: f64 = 1e-8;

fn retained(m: &MetricField<impl Real>) -> impl Iterator<Item = usize> + '_ {
    (0..m.chart().len()).filter(move |&p| m.chart().is_retained(p) && m.is_regular(p))
}

fn max_over<T: Real>(m: &MetricField<T>, f: impl Fn(usize) -> T) -> T {
    retained(m).map(f).fold(T::zero(), |a, b| a.max(b))
}

fn curvature_scale<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>) -> T {
    let s = max_over(m, |p| {
        let n = b.ric.rank();
        contract_full(m.chart().n(), n, m.ginv().at(p), b.ric.at(p), b.ric.at(p)).sqrt()
    });
    s.max(T::lit(FLAT_CURVATURE))
}

/// `max |R̊|` relative to `max |Ric|` over retained points.
pub fn einstein_residual<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>) -> T {
    let n = m.chart().n();
    let r0 = max_over(m, |p| contract_full(n, 2, m.ginv().at(p), b.ric0.at(p), b.ric0.at(p)).sqrt());
    r0 / curvature_scale(m, b)
}

/// `max |∇_i R_jk - ∇_j R_ik| + max |∇R|` relative to `max |Ric|^{3/2}`.
pub fn harmonic_residual<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>) -> T {
    let n = m.chart().n();
    let codazzi = max_over(m, |p| {
        let d = b.grad_ric.at(p);
        let mut c = vec![T::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[(i * n + j) * n + k] = d[(i * n + j) * n + k] - d[(j * n + i) * n + k];
                }
            }
        }
        contract_full(n, 3, m.ginv().at(p), &c, &c).sqrt()
    });
    let grad_r = max_over(m, |p| contract_full(n, 1, m.ginv().at(p), b.grad_scalar.at(p), b.grad_scalar.at(p)).sqrt());
    (codazzi + grad_r) / curvature_scale(m, b).powf(T::lit(1.5))
}

/// Pointwise residual of the Weyl Bochner identity on an Einstein metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylLaplacianResidual<T> {
    /// `max |½Δ|W|² - |∇W|² - (2/n)R|W|² + 2 cubic(W)|`
    pub max_abs: T,
    /// Largest magnitude of any single term.
    pub scale: T,
    pub witness: Option<Witness>,
}

pub fn einstein_weyl_laplacian_residual<T: Real>(
    b: &CurvatureBundle<T>,
    m: &MetricField<T>,
    tolerance: T,
) -> Result<WeylLaplacianResidual<T>> {
    let e = einstein_residual(m, b);
    if e > tolerance {
        return Err(Error::Precondition(format!("metric is not Einstein: relative |R̊| = {e:e}")));
    }
    let (weyl, grad) = match (&b.weyl, &b.grad_weyl_norm2) {
        (Some(w), Some(g)) => (w, g),
        _ => return Err(Error::Precondition("the Weyl residual needs a bundle built with Retain::Full".into())),
    };
    let st = Stencil::new(b.order)?;
    let lap = laplacian(m, &b.gamma, &b.weyl_norm2, &st);
    let nf = T::from_count(m.chart().n());
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut out = WeylLaplacianResidual { max_abs: T::zero(), scale: T::zero(), witness: None };
    for p in retained(m) {
        let frame = Frame::orthonormal(&m.g_at(p))?;
        let w = frame.alg4(&weyl.alg4(p, Symmetry::WEYL));
        let terms = [
            half * lap.scalar(p),
            -grad.scalar(p),
            -two / nf * b.scalar.scalar(p) * b.weyl_norm2.scalar(p),
            two * cubic_weyl_form(&w)?,
        ];
        let r = terms.iter().fold(T::zero(), |a, &t| a + t).abs();
        out.scale = terms.iter().fold(out.scale, |a, &t| a.max(t.abs()));
        if r > out.max_abs || out.witness.is_none() {
            out.max_abs = r;
            out.witness = Some(Witness::Point(p));
        }
    }
    Ok(out)
}

/// One refined Kato inequality `k |∇|X||² <= |∇X|²` over the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct KatoCheck<T> {
    pub hypothesis_residual: T,
    pub hypothesis_met: bool,
    /// Worst point; `None` when every point was excluded.
    pub report: Option<EstimateReport<T>>,
    pub excluded: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KatoReport<T> {
    /// `((n+1)/(n-1)) |∇|W||² <= |∇W|²` for Einstein metrics.
    pub einstein: KatoCheck<T>,
    /// `((n+2)/n) |∇|R̊||² <= |∇R̊|²` for harmonic curvature.
    pub codazzi: KatoCheck<T>,
}

fn kato_scan<T: Real>(
    m: &MetricField<T>,
    norm: &Field<T>,
    grad_norm2: &Field<T>,
    full: impl Fn(usize) -> T,
    k: T,
    tolerance: T,
) -> (Option<EstimateReport<T>>, usize) {
    let eps = T::lit(KATO_EXCLUSION) * max_over(m, |p| norm.scalar(p));
    let mut worst: Option<EstimateReport<T>> = None;
    let mut excluded = 0;
    for p in retained(m) {
        if norm.scalar(p) < eps || norm.scalar(p) == T::zero() {
            excluded += 1;
            continue;
        }
        let rep = EstimateReport::at_most(k * grad_norm2.scalar(p), full(p), tolerance).with_witness(Witness::Point(p));
        worst = Some(match worst {
            Some(w) => w.worse(rep),
            None => rep,
        });
    }
    (worst, excluded)
}

/// Both refined Kato inequalities. With `enforce`, a check whose structural
/// hypothesis fails beyond `hypothesis_tol` is an error; otherwise it is
/// reported with `hypothesis_met = false`.
pub fn kato_checks<T: Real>(
    b: &CurvatureBundle<T>,
    m: &MetricField<T>,
    hypothesis_tol: T,
    tolerance: T,
    enforce: bool,
) -> Result<KatoReport<T>> {
    let chart = m.chart();
    let n = chart.n();
    let nf = T::from_count(n);
    let st = Stencil::new(b.order)?;
    let e = einstein_residual(m, b);
    let h = harmonic_residual(m, b);
    if enforce && e > hypothesis_tol && h > hypothesis_tol {
        return Err(Error::Precondition(format!(
            "neither Einstein ({e:e}) nor harmonic curvature ({h:e}) holds to {hypothesis_tol:e}"
        )));
    }

    let einstein = match &b.grad_weyl_norm2 {
        Some(gw) => {
            let wn = b.weyl_norm2.map_scalar(chart, |v| v[0].max(T::zero()).sqrt());
            let gn = gradient_norm2(m, &wn, &st);
            let (report, excluded) =
                kato_scan(m, &wn, &gn, |p| gw.scalar(p), (nf + T::one()) / (nf - T::one()), tolerance);
            KatoCheck { hypothesis_residual: e, hypothesis_met: e <= hypothesis_tol, report, excluded }
        }
        None if enforce && e <= hypothesis_tol => {
            return Err(Error::Precondition("|∇W|² needs a bundle built with Retain::Full".into()))
        }
        None => KatoCheck { hypothesis_residual: e, hypothesis_met: e <= hypothesis_tol, report: None, excluded: 0 },
    };

    let rn = Field::from_fn(chart, 0, |p, o| {
        o[0] = contract_full(n, 2, m.ginv().at(p), b.ric0.at(p), b.ric0.at(p)).max(T::zero()).sqrt()
    });
    let gn = gradient_norm2(m, &rn, &st);
    let full = |p: usize| contract_full(n, 3, m.ginv().at(p), b.grad_ric0.at(p), b.grad_ric0.at(p));
    let (report, excluded) = kato_scan(m, &rn, &gn, full, (nf + T::lit(2.0)) / nf, tolerance);
    let codazzi = KatoCheck { hypothesis_residual: h, hypothesis_met: h <= hypothesis_tol, report, excluded };
    Ok(KatoReport { einstein, codazzi })
}

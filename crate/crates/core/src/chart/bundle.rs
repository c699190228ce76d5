use rayon::prelude::*;

use super::derivative::{
    check_stencil_fits, christoffel_from, contract_full, covariant_derivative, gradient,
    point_covariant, point_gradient, point_hessian,
};
use super::field::Field;
use super::metric::MetricField;
use super::stencil::Stencil;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{weyl_from_riemann, Alg4, Dim, Frame, Symmetry};

/// Which of the large rank-4 fields a bundle keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Retain {
    /// Riemann, Weyl, div W and |∇W|² are stored.
    Full,
    /// Only rank ≤ 3 fields; for fine grids.
    Lean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleOptions {
    pub order: usize,
    pub retain: Retain,
}

impl Default for BundleOptions {
    fn default() -> Self {
        BundleOptions {
            order: 4,
            retain: Retain::Full,
        }
    }
}

/// Max-norm consistency residuals over retained points.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BundleResiduals<T> {
    /// Size of the part removed when projecting Riemann onto its symmetry class.
    pub riemann_symmetry: T,
    pub weyl_trace: T,
    /// `max |C_ijk + C_jik|`
    pub cotton_antisymmetry: T,
    /// `max |B_ij - B_ji| / 2` before symmetrization.
    pub bach_asymmetry: T,
    /// `max |g^{ij} B_ij|`
    pub bach_trace: T,
    /// `max |div W + (n-3)/(n-2) C|`, when div W is available.
    pub div_weyl_cotton: Option<T>,
}

/// Every curvature field of a metric, computed by finite differences.
///
/// Rank-2 fields are stored densely; derivative fields put the derivative
/// index first.
#[derive(Clone, Debug)]
pub struct CurvatureBundle<T> {
    pub order: usize,
    /// `Γ^m_ij` as `[m][i][j]`.
    pub gamma: Field<T>,
    pub riem: Option<Field<T>>,
    pub ric: Field<T>,
    pub scalar: Field<T>,
    pub ric0: Field<T>,
    pub weyl: Option<Field<T>>,
    /// `|W|²` with the metric.
    pub weyl_norm2: Field<T>,
    /// `W_ikjl R^kl`
    pub weyl_ric: Field<T>,
    /// `∂_i R`
    pub grad_scalar: Field<T>,
    /// `∇_i R_jk`
    pub grad_ric: Field<T>,
    /// `∇_i R̊_jk`
    pub grad_ric0: Field<T>,
    /// `C_ijk = ∇_i R_kj - ∇_j R_ki - (∇_i R g_jk - ∇_j R g_ik) / (2(n-1))`
    pub cotton: Field<T>,
    /// `B_ij = (∇_k C_kij + W_ikjl R^kl) / (n-2)`, symmetrized.
    pub bach: Field<T>,
    /// `∇_l W_ijkl` contracted on the last slot.
    pub div_weyl: Option<Field<T>>,
    /// `|∇W|²`
    pub grad_weyl_norm2: Option<Field<T>>,
    pub residuals: BundleResiduals<T>,
}

/// `R_ijkl` (dense `n^4`) from metric derivatives at a point, plus the
/// Christoffel symbols of the second kind.
///
/// `dg[k][i][j] = ∂_k g_ij`, `ddg[a][b][i][j] = ∂_a∂_b g_ij`.
pub fn riemann_from_derivatives<T: Real>(
    n: usize,
    ginv: &[T],
    dg: &[T],
    ddg: &[T],
    gamma: &mut [T],
    riem: &mut [T],
) {
    let n2 = n * n;
    let half = T::lit(0.5);
    christoffel_from(n, ginv, dg, gamma);
    let mut low = vec![T::zero(); n * n2];
    for p in 0..n {
        for i in 0..n {
            for j in 0..n {
                low[(p * n + i) * n + j] = half
                    * (dg[(i * n + p) * n + j] + dg[(j * n + p) * n + i] - dg[(p * n + i) * n + j]);
            }
        }
    }
    let dd = |a: usize, b: usize, i: usize, j: usize| ddg[(a * n + b) * n2 + i * n + j];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let second = dd(i, l, k, j) - dd(i, k, j, l) - dd(j, l, k, i) + dd(j, k, i, l);
                    let mut quad = T::zero();
                    for p in 0..n {
                        quad += low[(p * n + j) * n + k] * gamma[(p * n + i) * n + l]
                            - low[(p * n + i) * n + k] * gamma[(p * n + j) * n + l];
                    }
                    riem[((i * n + j) * n + k) * n + l] = half * second + quad;
                }
            }
        }
    }
}

struct Layout {
    n: usize,
    gamma: usize,
    riem: usize,
    ric: usize,
    scalar: usize,
    ric0: usize,
    weyl: usize,
    weyl_norm2: usize,
    weyl_ric: usize,
    sym_res: usize,
    trace_res: usize,
    stride: usize,
}

impl Layout {
    fn new(n: usize, full: bool) -> Self {
        let n2 = n * n;
        let n4 = n2 * n2;
        let big = if full { n4 } else { 0 };
        let gamma = 0;
        let riem = gamma + n * n2;
        let ric = riem + big;
        let scalar = ric + n2;
        let ric0 = scalar + 1;
        let weyl = ric0 + n2;
        let weyl_norm2 = weyl + big;
        let weyl_ric = weyl_norm2 + 1;
        let sym_res = weyl_ric + n2;
        let trace_res = sym_res + 1;
        Layout {
            n,
            gamma,
            riem,
            ric,
            scalar,
            ric0,
            weyl,
            weyl_norm2,
            weyl_ric,
            sym_res,
            trace_res,
            stride: trace_res + 1,
        }
    }
}

const BLOCK: usize = 8192;

fn pointwise<T: Real>(
    m: &MetricField<T>,
    st: &Stencil<T>,
    lay: &Layout,
    full: bool,
    p: usize,
    o: &mut [T],
) -> Result<()> {
    let chart = m.chart();
    let n = lay.n;
    let n2 = n * n;
    if !m.is_regular(p) {
        o.iter_mut().for_each(|x| *x = T::zero());
        return Ok(());
    }
    let dim = chart.dim();
    let idx = chart.unravel(p);
    let mut dg = vec![T::zero(); n * n2];
    let mut ddg = vec![T::zero(); n2 * n2];
    point_gradient(chart, m.g(), st, p, &idx, &mut dg);
    point_hessian(chart, m.g(), st, p, &idx, &mut ddg);
    let ginv_d = m.ginv().at(p);
    let mut riem_d = vec![T::zero(); n2 * n2];
    riemann_from_derivatives(
        n,
        ginv_d,
        &dg,
        &ddg,
        &mut o[lay.gamma..lay.gamma + n * n2],
        &mut riem_d,
    );
    let riem = Alg4::from_values(dim, riem_d)?.project(Symmetry::RIEMANN);
    let g = m.g_at(p);
    let ginv = m.ginv_at(p);
    let ric = riem.ricci_contraction_with(&ginv);
    let r = ric.trace_with(&ginv);
    let ric0 = ric - g * (r / T::from_count(n));
    let w = weyl_from_riemann(&riem, &ric, r, &g)?;
    let frame = Frame::orthonormal(&g)?;
    let w_frame = frame.alg4(&w);
    // W_ikjl R^kl
    let ric_up = {
        let rd = ric.to_dense();
        let mut up = vec![T::zero(); n2];
        for k in 0..n {
            for l in 0..n {
                let mut s = T::zero();
                for a in 0..n {
                    for b in 0..n {
                        s += ginv_d[k * n + a] * ginv_d[l * n + b] * rd[a * n + b];
                    }
                }
                up[k * n + l] = s;
            }
        }
        up
    };
    for i in 0..n {
        for j in 0..n {
            let mut s = T::zero();
            for k in 0..n {
                for l in 0..n {
                    s += w.get(i, k, j, l) * ric_up[k * n + l];
                }
            }
            o[lay.weyl_ric + i * n + j] = s;
        }
    }
    o[lay.ric..lay.ric + n2].copy_from_slice(&ric.to_dense());
    o[lay.scalar] = r;
    o[lay.ric0..lay.ric0 + n2].copy_from_slice(&ric0.to_dense());
    o[lay.weyl_norm2] = w_frame.norm2();
    o[lay.sym_res] = riem.residual();
    o[lay.trace_res] = w.residual();
    if full {
        o[lay.riem..lay.riem + n2 * n2].copy_from_slice(riem.values());
        o[lay.weyl..lay.weyl + n2 * n2].copy_from_slice(w.values());
    }
    Ok(())
}

/// Christoffel symbols, Riemann, Ricci, scalar, traceless Ricci, Weyl,
/// Cotton and Bach fields of `m`.
pub fn curvature_bundle<T: Real>(m: &MetricField<T>, opts: BundleOptions) -> Result<CurvatureBundle<T>> {
    let st = Stencil::new(opts.order)?;
    let chart = m.chart();
    check_stencil_fits(chart, &st)?;
    let n = chart.n();
    if n < 4 {
        return Err(Error::DimensionOutOfRange(n));
    }
    let n2 = n * n;
    let full = opts.retain == Retain::Full;
    let lay = Layout::new(n, full);

    let mut gamma = Field::zeros(chart, 3);
    let mut riem = full.then(|| Field::zeros(chart, 4));
    let mut ric = Field::zeros(chart, 2);
    let mut scalar = Field::zeros(chart, 0);
    let mut ric0 = Field::zeros(chart, 2);
    let mut weyl = full.then(|| Field::zeros(chart, 4));
    let mut weyl_norm2 = Field::zeros(chart, 0);
    let mut weyl_ric = Field::zeros(chart, 2);
    let mut residuals = BundleResiduals::<T>::default();

    let len = chart.len();
    let mut start = 0;
    while start < len {
        let count = BLOCK.min(len - start);
        let mut buf = vec![T::zero(); count * lay.stride];
        buf.par_chunks_mut(lay.stride)
            .enumerate()
            .try_for_each(|(i, o)| pointwise(m, &st, &lay, full, start + i, o))?;
        for i in 0..count {
            let p = start + i;
            let o = &buf[i * lay.stride..(i + 1) * lay.stride];
            gamma.at_mut(p).copy_from_slice(&o[lay.gamma..lay.gamma + n * n2]);
            ric.at_mut(p).copy_from_slice(&o[lay.ric..lay.ric + n2]);
            scalar.at_mut(p)[0] = o[lay.scalar];
            ric0.at_mut(p).copy_from_slice(&o[lay.ric0..lay.ric0 + n2]);
            weyl_norm2.at_mut(p)[0] = o[lay.weyl_norm2];
            weyl_ric.at_mut(p).copy_from_slice(&o[lay.weyl_ric..lay.weyl_ric + n2]);
            if let Some(f) = riem.as_mut() {
                f.at_mut(p).copy_from_slice(&o[lay.riem..lay.riem + n2 * n2]);
            }
            if let Some(f) = weyl.as_mut() {
                f.at_mut(p).copy_from_slice(&o[lay.weyl..lay.weyl + n2 * n2]);
            }
            if chart.is_retained(p) {
                residuals.riemann_symmetry = residuals.riemann_symmetry.max(o[lay.sym_res]);
                residuals.weyl_trace = residuals.weyl_trace.max(o[lay.trace_res]);
            }
        }
        start += count;
    }

    let grad_scalar = gradient(chart, &scalar, &st);
    let grad_ric = covariant_derivative(m, &gamma, &ric, &st);
    let nf = T::from_count(n);
    let grad_ric0 = Field::from_fn(chart, 3, |p, o| {
        let d = grad_ric.at(p);
        let dr = grad_scalar.at(p);
        let g = m.g().at(p);
        for i in 0..n {
            for jk in 0..n2 {
                o[i * n2 + jk] = d[i * n2 + jk] - dr[i] * g[jk] / nf;
            }
        }
    });
    let c_r = T::one() / (T::lit(2.0) * (nf - T::one()));
    let cotton = Field::from_fn(chart, 3, |p, o| {
        let d = grad_ric.at(p);
        let dr = grad_scalar.at(p);
        let g = m.g().at(p);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    o[(i * n + j) * n + k] = d[(i * n + k) * n + j]
                        - d[(j * n + k) * n + i]
                        - c_r * (dr[i] * g[j * n + k] - dr[j] * g[i * n + k]);
                }
            }
        }
    });

    let inv_n2 = T::one() / (nf - T::lit(2.0));
    let mut bach = Field::zeros(chart, 2);
    let mut asym = vec![T::zero(); len];
    bach.data_mut()
        .par_chunks_mut(n2)
        .zip(asym.par_iter_mut())
        .enumerate()
        .for_each(|(p, (o, a))| {
            let idx = chart.unravel(p);
            let mut dc = vec![T::zero(); n2 * n2];
            point_covariant(chart, &gamma, &cotton, &st, p, &idx, &mut dc);
            let gi = m.ginv().at(p);
            let wr = weyl_ric.at(p);
            let mut raw = vec![T::zero(); n2];
            for i in 0..n {
                for j in 0..n {
                    let mut s = T::zero();
                    for aa in 0..n {
                        for k in 0..n {
                            s += gi[aa * n + k] * dc[aa * n * n2 + (k * n + i) * n + j];
                        }
                    }
                    raw[i * n + j] = inv_n2 * (s + wr[i * n + j]);
                }
            }
            let half = T::lit(0.5);
            for i in 0..n {
                for j in 0..n {
                    o[i * n + j] = half * (raw[i * n + j] + raw[j * n + i]);
                    *a = a.max((half * (raw[i * n + j] - raw[j * n + i])).abs());
                }
            }
        });

    let (div_weyl, grad_weyl_norm2) = match &weyl {
        Some(w) => {
            let pair = weyl_derivatives(m, &gamma, w, &st);
            (Some(pair.0), Some(pair.1))
        }
        None => (None, None),
    };

    let ratio = (nf - T::lit(3.0)) / (nf - T::lit(2.0));
    for p in (0..len).filter(|&p| chart.is_retained(p)) {
        residuals.bach_asymmetry = residuals.bach_asymmetry.max(asym[p]);
        let c = cotton.at(p);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = c[(i * n + j) * n + k] + c[(j * n + i) * n + k];
                    residuals.cotton_antisymmetry = residuals.cotton_antisymmetry.max(s.abs());
                }
            }
        }
        let b = bach.at(p);
        let gi = m.ginv().at(p);
        let tr: T = b.iter().zip(gi).map(|(&x, &y)| x * y).sum();
        residuals.bach_trace = residuals.bach_trace.max(tr.abs());
        if let Some(dw) = &div_weyl {
            let d = dw.at(p);
            let worst = d
                .iter()
                .zip(c)
                .fold(T::zero(), |acc, (&x, &y)| acc.max((x + ratio * y).abs()));
            let prev = residuals.div_weyl_cotton.unwrap_or(T::zero());
            residuals.div_weyl_cotton = Some(prev.max(worst));
        }
    }

    Ok(CurvatureBundle {
        order: opts.order,
        gamma,
        riem,
        ric,
        scalar,
        ric0,
        weyl,
        weyl_norm2,
        weyl_ric,
        grad_scalar,
        grad_ric,
        grad_ric0,
        cotton,
        bach,
        div_weyl,
        grad_weyl_norm2,
        residuals,
    })
}

/// `div W` (contracted on the last slot) and `|∇W|²`.
fn weyl_derivatives<T: Real>(
    m: &MetricField<T>,
    gamma: &Field<T>,
    w: &Field<T>,
    st: &Stencil<T>,
) -> (Field<T>, Field<T>) {
    let chart = m.chart();
    let n = chart.n();
    let n4 = n.pow(4);
    let mut div = Field::zeros(chart, 3);
    let mut norm = Field::zeros(chart, 0);
    div.data_mut()
        .par_chunks_mut(n * n * n)
        .zip(norm.data_mut().par_iter_mut())
        .enumerate()
        .for_each(|(p, (d, nv))| {
            if !m.is_regular(p) {
                return;
            }
            let idx = chart.unravel(p);
            let mut dw = vec![T::zero(); n * n4];
            point_covariant(chart, gamma, w, st, p, &idx, &mut dw);
            let gi = m.ginv().at(p);
            for ijk in 0..n * n * n {
                let mut s = T::zero();
                for mm in 0..n {
                    for l in 0..n {
                        s += gi[l * n + mm] * dw[mm * n4 + ijk * n + l];
                    }
                }
                d[ijk] = s;
            }
            *nv = contract_full(n, 5, gi, &dw, &dw);
        });
    (div, norm)
}

impl<T: Real> CurvatureBundle<T> {
    pub fn dim(&self) -> Dim {
        Dim::new(self.ric.comps().isqrt()).expect("bundle dimension")
    }

    /// Weyl tensor at `p`, declaring the Weyl symmetry class.
    pub fn weyl_at(&self, p: usize) -> Option<Alg4<T>> {
        self.weyl.as_ref().map(|w| w.alg4(p, Symmetry::WEYL))
    }

    pub fn riem_at(&self, p: usize) -> Option<Alg4<T>> {
        self.riem.as_ref().map(|r| r.alg4(p, Symmetry::RIEMANN))
    }

    /// Contracted second Bianchi identity `g^{ij} ∇_i R_jk = ∂_k R / 2` over
    /// retained points: `(max |defect|, max |∇Ric|)`.
    pub fn bianchi_residual(&self, m: &MetricField<T>) -> (T, T) {
        let chart = m.chart();
        let n = chart.n();
        let half = T::lit(0.5);
        (0..chart.len())
            .filter(|&p| chart.is_retained(p))
            .fold((T::zero(), T::zero()), |(worst, scale), p| {
                let gi = m.ginv().at(p);
                let d = self.grad_ric.at(p);
                let ds = self.grad_scalar.at(p);
                let mut w = worst;
                for k in 0..n {
                    let mut div = T::zero();
                    for i in 0..n {
                        for j in 0..n {
                            div += gi[i * n + j] * d[(i * n + j) * n + k];
                        }
                    }
                    w = w.max((div - half * ds[k]).abs());
                }
                let s = d.iter().fold(scale, |a, &x| a.max(x.abs()));
                (w, s)
            })
    }
}

/// Bach tensor from the divergence of Weyl:
/// `B_ij = -∇^k (div W)_kij / (n-3) + W_ikjl R^kl / (n-2)`.
pub fn bach_from_div_weyl<T: Real>(m: &MetricField<T>, b: &CurvatureBundle<T>) -> Result<Field<T>> {
    let dw = b.div_weyl.as_ref().ok_or_else(|| {
        Error::Precondition("div W is only kept by bundles built with Retain::Full".into())
    })?;
    let st = Stencil::new(b.order)?;
    let chart = m.chart();
    let n = chart.n();
    let n2 = n * n;
    let nf = T::from_count(n);
    let c3 = T::one() / (nf - T::lit(3.0));
    let c2 = T::one() / (nf - T::lit(2.0));
    Ok(Field::from_fn(chart, 2, |p, o| {
        let idx = chart.unravel(p);
        let mut d = vec![T::zero(); n2 * n2];
        point_covariant(chart, &b.gamma, dw, &st, p, &idx, &mut d);
        let gi = m.ginv().at(p);
        let wr = b.weyl_ric.at(p);
        let half = T::lit(0.5);
        let mut raw = vec![T::zero(); n2];
        for i in 0..n {
            for j in 0..n {
                let mut s = T::zero();
                for a in 0..n {
                    for k in 0..n {
                        s += gi[a * n + k] * d[a * n * n2 + (k * n + i) * n + j];
                    }
                }
                raw[i * n + j] = -c3 * s + c2 * wr[i * n + j];
            }
        }
        for i in 0..n {
            for j in 0..n {
                o[i * n + j] = half * (raw[i * n + j] + raw[j * n + i]);
            }
        }
    }))
}

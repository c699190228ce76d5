use super::field::Field;
use super::grid::{AxisKind, Chart, Index};
use super::metric::MetricField;
use super::stencil::Stencil;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Stencil radii spanned by the deepest bundle field: two for the metric
/// Hessian, one each for Cotton and Bach.
pub const NESTING: usize = 4;

/// Open axes need enough excised margin for every nested stencil.
pub fn check_stencil_fits<T: Real>(chart: &Chart<T>, st: &Stencil<T>) -> Result<()> {
    for (a, ax) in chart.axes().iter().enumerate() {
        if ax.kind == AxisKind::Open && ax.margin < st.radius() * NESTING {
            return Err(Error::InvalidChart(format!(
                "open axis {a} needs margin >= {}, has {}",
                st.radius() * NESTING,
                ax.margin
            )));
        }
    }
    Ok(())
}

/// `out[a * comps + c] = ∂_a f_c` at point `p`.
pub fn point_gradient<T: Real>(
    chart: &Chart<T>,
    f: &Field<T>,
    st: &Stencil<T>,
    p: usize,
    idx: &Index,
    out: &mut [T],
) {
    let n = chart.n();
    let comps = f.comps();
    for a in 0..n {
        let o = &mut out[a * comps..(a + 1) * comps];
        o.iter_mut().for_each(|x| *x = T::zero());
        for &(off, w) in st.first() {
            let (q, flips) = chart.shift(p, idx, a, off);
            if flips == 0 {
                for (x, &v) in o.iter_mut().zip(f.at(q)) {
                    *x += w * v;
                }
            } else {
                for (c, x) in o.iter_mut().enumerate() {
                    *x += w * f.signed(q, c, flips);
                }
            }
        }
        let inv_h = T::one() / chart.h(a);
        o.iter_mut().for_each(|x| *x *= inv_h);
    }
}

/// `out[(a * n + b) * comps + c] = ∂_a ∂_b f_c` at point `p`, applying the
/// first-derivative stencil once per derivative (pure ones included), so
/// second derivatives stay consistent with first ones.
pub fn point_hessian<T: Real>(
    chart: &Chart<T>,
    f: &Field<T>,
    st: &Stencil<T>,
    p: usize,
    idx: &Index,
    out: &mut [T],
) {
    let n = chart.n();
    let comps = f.comps();
    for a in 0..n {
        for b in a..n {
            let base = (a * n + b) * comps;
            {
                let o = &mut out[base..base + comps];
                o.iter_mut().for_each(|x| *x = T::zero());
                if a == b {
                    for &(oa, wa) in st.first() {
                        for &(ob, wb) in st.first() {
                            let (q, flips) = chart.shift(p, idx, a, oa + ob);
                            let w = wa * wb;
                            for (c, x) in o.iter_mut().enumerate() {
                                *x += w * f.signed(q, c, flips);
                            }
                        }
                    }
                    let h = chart.h(a);
                    let s = T::one() / (h * h);
                    o.iter_mut().for_each(|x| *x *= s);
                } else {
                    for &(oa, wa) in st.first() {
                        for &(ob, wb) in st.first() {
                            let (q, flips) = chart.shift2(p, idx, a, oa, b, ob);
                            let w = wa * wb;
                            for (c, x) in o.iter_mut().enumerate() {
                                *x += w * f.signed(q, c, flips);
                            }
                        }
                    }
                    let s = T::one() / (chart.h(a) * chart.h(b));
                    o.iter_mut().for_each(|x| *x *= s);
                }
            }
            if a != b {
                let (lo, hi) = out.split_at_mut((b * n + a) * comps);
                hi[..comps].copy_from_slice(&lo[base..base + comps]);
            }
        }
    }
}

/// Partial derivatives of every component; derivative index first.
pub fn gradient<T: Real>(chart: &Chart<T>, f: &Field<T>, st: &Stencil<T>) -> Field<T> {
    Field::from_fn(chart, f.rank() + 1, |p, o| {
        let idx = chart.unravel(p);
        point_gradient(chart, f, st, p, &idx, o);
    })
}

/// Subtracts the connection terms from a partial gradient already in `out`.
pub fn connection_correction<T: Real>(n: usize, rank: usize, gamma: &[T], fp: &[T], out: &mut [T]) {
    let comps = n.pow(rank as u32);
    for a in 0..n {
        for c in 0..comps {
            let mut corr = T::zero();
            let mut stride = 1;
            for _ in 0..rank {
                let digit = (c / stride) % n;
                let base = c - digit * stride;
                for m in 0..n {
                    corr += gamma[(m * n + a) * n + digit] * fp[base + m * stride];
                }
                stride *= n;
            }
            out[a * comps + c] -= corr;
        }
    }
}

/// `∇_a f_c` at `p` for a covariant field of any rank.
pub fn point_covariant<T: Real>(
    chart: &Chart<T>,
    gamma: &Field<T>,
    f: &Field<T>,
    st: &Stencil<T>,
    p: usize,
    idx: &Index,
    out: &mut [T],
) {
    point_gradient(chart, f, st, p, idx, out);
    connection_correction(chart.n(), f.rank(), gamma.at(p), f.at(p), out);
}

/// Christoffel symbols `Γ^m_ij`, stored `[m][i][j]`.
pub fn christoffel<T: Real>(m: &MetricField<T>, st: &Stencil<T>) -> Result<Field<T>> {
    let chart = m.chart();
    check_stencil_fits(chart, st)?;
    let n = chart.n();
    Ok(Field::from_fn(chart, 3, |p, o| {
        let idx = chart.unravel(p);
        let mut dg = vec![T::zero(); n * n * n];
        point_gradient(chart, m.g(), st, p, &idx, &mut dg);
        christoffel_from(n, m.ginv().at(p), &dg, o);
    }))
}

/// `Γ^m_ij = g^{mp} (∂_i g_pj + ∂_j g_pi - ∂_p g_ij) / 2` from `dg[k][i][j] = ∂_k g_ij`.
pub fn christoffel_from<T: Real>(n: usize, ginv: &[T], dg: &[T], out: &mut [T]) {
    let half = T::lit(0.5);
    let d = |k: usize, i: usize, j: usize| dg[(k * n + i) * n + j];
    for i in 0..n {
        for j in i..n {
            for mm in 0..n {
                let mut s = T::zero();
                for q in 0..n {
                    s += ginv[mm * n + q] * (d(i, q, j) + d(j, q, i) - d(q, i, j));
                }
                out[(mm * n + i) * n + j] = half * s;
                out[(mm * n + j) * n + i] = half * s;
            }
        }
    }
}

/// Covariant derivative of any covariant field; derivative index first.
pub fn covariant_derivative<T: Real>(
    m: &MetricField<T>,
    gamma: &Field<T>,
    f: &Field<T>,
    st: &Stencil<T>,
) -> Field<T> {
    let chart = m.chart();
    Field::from_fn(chart, f.rank() + 1, |p, o| {
        let idx = chart.unravel(p);
        point_covariant(chart, gamma, f, st, p, &idx, o);
    })
}

/// `D[i][j][k] = ∇_i φ_jk`.
pub fn covariant_derivative_sym2<T: Real>(
    m: &MetricField<T>,
    gamma: &Field<T>,
    phi: &Field<T>,
    st: &Stencil<T>,
) -> Result<Field<T>> {
    if phi.rank() != 2 || phi.points() != m.chart().len() {
        return Err(Error::InvalidGeometry("expected a symmetric 2-tensor field on the chart".into()));
    }
    Ok(covariant_derivative(m, gamma, phi, st))
}

/// Laplace–Beltrami operator `g^{ab}(∂_a∂_b f - Γ^c_ab ∂_c f)` of a scalar field.
pub fn laplacian<T: Real>(
    m: &MetricField<T>,
    gamma: &Field<T>,
    f: &Field<T>,
    st: &Stencil<T>,
) -> Field<T> {
    let chart = m.chart();
    let n = chart.n();
    Field::from_fn(chart, 0, |p, o| {
        let idx = chart.unravel(p);
        let mut d1 = vec![T::zero(); n];
        let mut d2 = vec![T::zero(); n * n];
        point_gradient(chart, f, st, p, &idx, &mut d1);
        point_hessian(chart, f, st, p, &idx, &mut d2);
        let gi = m.ginv().at(p);
        let gm = gamma.at(p);
        let mut s = T::zero();
        for a in 0..n {
            for b in 0..n {
                let mut h = d2[a * n + b];
                for c in 0..n {
                    h -= gm[(c * n + a) * n + b] * d1[c];
                }
                s += gi[a * n + b] * h;
            }
        }
        o[0] = s;
    })
}

/// `g^{ab} ∂_a f ∂_b f` for a scalar field.
pub fn gradient_norm2<T: Real>(m: &MetricField<T>, f: &Field<T>, st: &Stencil<T>) -> Field<T> {
    let chart = m.chart();
    let n = chart.n();
    Field::from_fn(chart, 0, |p, o| {
        let idx = chart.unravel(p);
        let mut d1 = vec![T::zero(); n];
        point_gradient(chart, f, st, p, &idx, &mut d1);
        o[0] = contract_full(n, 1, m.ginv().at(p), &d1, &d1);
    })
}

/// Full metric contraction `g^{a1b1}...g^{arbr} x_{a..} y_{b..}` of two rank-`r` arrays.
pub fn contract_full<T: Real>(n: usize, rank: usize, ginv: &[T], x: &[T], y: &[T]) -> T {
    // Raise every index of y one slot at a time.
    let mut cur = y.to_vec();
    let mut next = vec![T::zero(); cur.len()];
    for slot in 0..rank {
        let stride = n.pow((rank - 1 - slot) as u32);
        let outer = n.pow(slot as u32);
        for o in 0..outer {
            for a in 0..n {
                for s in 0..stride {
                    let mut acc = T::zero();
                    for b in 0..n {
                        acc += ginv[a * n + b] * cur[(o * n + b) * stride + s];
                    }
                    next[(o * n + a) * stride + s] = acc;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    x.iter().zip(&cur).map(|(&a, &b)| a * b).sum()
}

/// θ-tensor of a symmetric 2-tensor field.
#[derive(Clone, Debug)]
pub struct ThetaTensorField<T> {
    pub theta: T,
    /// `∇_i φ_jk`, derivative index first.
    pub dphi: Field<T>,
    /// `C[i][j][k] = ∇_i φ_kj - θ ∇_j φ_ki`.
    pub c: Field<T>,
}

/// Builds the θ-tensor from a precomputed `∇φ`.
pub fn theta_from_derivative<T: Real>(chart: &Chart<T>, dphi: Field<T>, theta: T) -> ThetaTensorField<T> {
    let n = chart.n();
    let c = Field::from_fn(chart, 3, |p, o| {
        let d = dphi.at(p);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    o[(i * n + j) * n + k] = d[(i * n + k) * n + j] - theta * d[(j * n + k) * n + i];
                }
            }
        }
    });
    ThetaTensorField { theta, dphi, c }
}

pub fn theta_tensor<T: Real>(
    m: &MetricField<T>,
    gamma: &Field<T>,
    phi: &Field<T>,
    theta: T,
    st: &Stencil<T>,
) -> Result<ThetaTensorField<T>> {
    let dphi = covariant_derivative_sym2(m, gamma, phi, st)?;
    Ok(theta_from_derivative(m.chart(), dphi, theta))
}

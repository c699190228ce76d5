use std::fmt;
use std::ops::{BitAnd, BitOr};

use super::dim::Dim;
use super::sym2::Sym2;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Set of index symmetries an [`Alg4`] is declared to satisfy.
#[derive(Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Symmetry(u8);

impl Symmetry {
    pub const NONE: Self = Symmetry(0);
    /// `T_ijkl = -T_jikl`
    pub const ANTISYM12: Self = Symmetry(1);
    /// `T_ijkl = -T_ijlk`
    pub const ANTISYM34: Self = Symmetry(2);
    /// `T_ijkl = T_klij`
    pub const PAIR: Self = Symmetry(4);
    /// `T_ijkl + T_jkil + T_kijl = 0`
    pub const BIANCHI: Self = Symmetry(8);
    /// Every single trace vanishes.
    pub const TRACEFREE: Self = Symmetry(16);
    pub const RIEMANN: Self = Symmetry(15);
    pub const WEYL: Self = Symmetry(31);

    const NAMES: [(Symmetry, &'static str); 5] = [
        (Self::ANTISYM12, "antisym12"),
        (Self::ANTISYM34, "antisym34"),
        (Self::PAIR, "pair-symmetric"),
        (Self::BIANCHI, "first-Bianchi"),
        (Self::TRACEFREE, "totally-tracefree"),
    ];

    #[inline]
    pub fn contains(self, other: Symmetry) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn names(self) -> Vec<&'static str> {
        Self::NAMES
            .iter()
            .filter(|(f, _)| self.contains(*f))
            .map(|(_, s)| *s)
            .collect()
    }
}

impl BitOr for Symmetry {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        Symmetry(self.0 | rhs.0)
    }
}

impl BitAnd for Symmetry {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        Symmetry(self.0 & rhs.0)
    }
}

impl fmt::Debug for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

/// Dense 4-index tensor `T[i][j][k][l]` carrying declared symmetry flags.
///
/// Constructors that declare flags either build the tensor so that the
/// symmetries hold exactly, or project onto the symmetry class and keep the
/// size of the removed part in [`Alg4::residual`].
#[derive(Clone, Debug, PartialEq)]
pub struct Alg4<T> {
    dim: Dim,
    v: Vec<T>,
    flags: Symmetry,
    residual: T,
}

#[inline]
fn idx(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

impl<T: Real> Alg4<T> {
    pub fn zeros(dim: Dim) -> Self {
        let n = dim.get();
        Alg4 {
            dim,
            v: vec![T::zero(); n * n * n * n],
            flags: Symmetry::WEYL,
            residual: T::zero(),
        }
    }

    /// Wraps raw values without declaring any symmetry.
    pub fn from_values(dim: Dim, v: Vec<T>) -> Result<Self> {
        let n = dim.get();
        if v.len() != n.pow(4) {
            return Err(Error::DimensionMismatch {
                left: v.len(),
                right: n.pow(4),
            });
        }
        Ok(Alg4 {
            dim,
            v,
            flags: Symmetry::NONE,
            residual: T::zero(),
        })
    }

    pub fn from_fn(dim: Dim, mut f: impl FnMut(usize, usize, usize, usize) -> T) -> Self {
        let n = dim.get();
        let mut v = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        v.push(f(i, j, k, l));
                    }
                }
            }
        }
        Alg4 {
            dim,
            v,
            flags: Symmetry::NONE,
            residual: T::zero(),
        }
    }

    /// Projects raw values onto the requested symmetry class.
    pub fn with_symmetry(dim: Dim, v: Vec<T>, target: Symmetry) -> Result<Self> {
        Ok(Self::from_values(dim, v)?.project(target))
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.dim.get()
    }

    #[inline]
    pub fn flags(&self) -> Symmetry {
        self.flags
    }

    /// Max-abs size of whatever the last projection removed.
    #[inline]
    pub fn residual(&self) -> T {
        self.residual
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> T {
        self.v[idx(self.n(), i, j, k, l)]
    }

    pub fn values(&self) -> &[T] {
        &self.v
    }

    pub fn into_values(self) -> Vec<T> {
        self.v
    }

    pub(crate) fn with_flags(mut self, flags: Symmetry, residual: T) -> Self {
        self.flags = flags;
        self.residual = residual;
        self
    }

    pub fn max_abs(&self) -> T {
        self.v.iter().fold(T::zero(), |a, &x| a.max(x.abs()))
    }

    /// Projects onto `target`. Requesting first-Bianchi or tracefreeness
    /// implies the full algebraic-curvature class; traces are taken with the
    /// identity metric (orthonormal frame components).
    pub fn project(self, target: Symmetry) -> Self {
        let n = self.n();
        let target = if target.contains(Symmetry::BIANCHI) || target.contains(Symmetry::TRACEFREE) {
            target | Symmetry::RIEMANN
        } else {
            target
        };
        let original = self.v.clone();
        let mut v = self.v;
        let half = T::lit(0.5);
        let apply = |v: &mut Vec<T>, f: &dyn Fn(&[T], usize, usize, usize, usize) -> T| {
            let src = v.clone();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            v[idx(n, i, j, k, l)] = f(&src, i, j, k, l);
                        }
                    }
                }
            }
        };
        if target.contains(Symmetry::ANTISYM12) {
            apply(&mut v, &|s, i, j, k, l| half * (s[idx(n, i, j, k, l)] - s[idx(n, j, i, k, l)]));
        }
        if target.contains(Symmetry::ANTISYM34) {
            apply(&mut v, &|s, i, j, k, l| half * (s[idx(n, i, j, k, l)] - s[idx(n, i, j, l, k)]));
        }
        if target.contains(Symmetry::PAIR) {
            apply(&mut v, &|s, i, j, k, l| half * (s[idx(n, i, j, k, l)] + s[idx(n, k, l, i, j)]));
        }
        if target.contains(Symmetry::BIANCHI) {
            let third = T::one() / T::lit(3.0);
            apply(&mut v, &|s, i, j, k, l| {
                s[idx(n, i, j, k, l)]
                    - third * (s[idx(n, i, j, k, l)] + s[idx(n, j, k, i, l)] + s[idx(n, k, i, j, l)])
            });
        }
        let mut out = Alg4 {
            dim: self.dim,
            v,
            flags: target,
            residual: T::zero(),
        };
        if target.contains(Symmetry::TRACEFREE) {
            let g = Sym2::identity(self.dim);
            out = out.remove_traces(&g, &g);
        }
        let residual = original
            .iter()
            .zip(out.v.iter())
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
        out.residual = residual;
        out
    }

    /// Ricci-decomposition subtraction of every trace of an algebraic
    /// curvature tensor, with respect to `g` (whose inverse is `ginv`).
    pub fn remove_traces(&self, g: &Sym2<T>, ginv: &Sym2<T>) -> Self {
        let n = T::from_count(self.n());
        let ric = self.ricci_contraction_with(ginv);
        let r = ric.trace_with(ginv);
        let ric0 = ric - *g * (r / n);
        let two = T::lit(2.0);
        let a = kn_unchecked(&ric0, g).scale(T::one() / (n - two));
        let b = kn_unchecked(g, g).scale(r / (two * n * (n - T::one())));
        let mut w = self.sub_unchecked(&a).sub_unchecked(&b);
        w.flags = self.flags | Symmetry::TRACEFREE;
        w
    }

    /// Largest violation of a single symmetry flag.
    pub fn violation(&self, flag: Symmetry) -> T {
        let n = self.n();
        let s = &self.v;
        let mut m = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let x = s[idx(n, i, j, k, l)];
                        let d = match flag {
                            f if f == Symmetry::ANTISYM12 => x + s[idx(n, j, i, k, l)],
                            f if f == Symmetry::ANTISYM34 => x + s[idx(n, i, j, l, k)],
                            f if f == Symmetry::PAIR => x - s[idx(n, k, l, i, j)],
                            f if f == Symmetry::BIANCHI => {
                                x + s[idx(n, j, k, i, l)] + s[idx(n, k, i, j, l)]
                            }
                            _ => T::zero(),
                        };
                        m = m.max(d.abs());
                    }
                }
            }
        }
        if flag == Symmetry::TRACEFREE {
            m = self.trace_residual_with(&Sym2::identity(self.dim));
        }
        m
    }

    /// Largest entry over all six single traces, taken with `ginv`.
    pub fn trace_residual_with(&self, ginv: &Sym2<T>) -> T {
        let n = self.n();
        let mut m = T::zero();
        let slots = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for &(p, q) in &slots {
            for x in 0..n {
                for y in 0..n {
                    let mut acc = T::zero();
                    for a in 0..n {
                        for b in 0..n {
                            let gab = ginv.get(a, b);
                            if gab == T::zero() {
                                continue;
                            }
                            let mut ix = [0usize; 4];
                            ix[p] = a;
                            ix[q] = b;
                            let mut rest = [x, y].into_iter();
                            for (s, slot) in ix.iter_mut().enumerate() {
                                if s != p && s != q {
                                    *slot = rest.next().unwrap();
                                }
                            }
                            acc += gab * self.get(ix[0], ix[1], ix[2], ix[3]);
                        }
                    }
                    m = m.max(acc.abs());
                }
            }
        }
        m
    }

    /// Fails unless `required` is among the declared flags.
    pub fn require(&self, required: Symmetry) -> Result<()> {
        if self.flags.contains(required) {
            Ok(())
        } else {
            Err(Error::FlagViolation(format!(
                "need {:?}, tensor declares {:?}",
                required, self.flags
            )))
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Alg4 {
            dim: self.dim,
            v: self.v.iter().map(|&x| x * s).collect(),
            flags: self.flags,
            residual: self.residual,
        }
    }

    fn zip_unchecked(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        Alg4 {
            dim: self.dim,
            v: self.v.iter().zip(&other.v).map(|(&a, &b)| f(a, b)).collect(),
            flags: self.flags & other.flags,
            residual: self.residual.max(other.residual),
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        self.zip_unchecked(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.dim.same(other.dim)?;
        Ok(self.zip_unchecked(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.dim.same(other.dim)?;
        Ok(self.sub_unchecked(other))
    }

    /// `self + s * other`
    pub fn axpy(&self, s: T, other: &Self) -> Result<Self> {
        self.dim.same(other.dim)?;
        Ok(self.zip_unchecked(other, |a, b| a + s * b))
    }

    pub fn norm2(&self) -> T {
        self.v.iter().map(|&x| x * x).sum()
    }

    pub fn norm(&self) -> T {
        self.norm2().sqrt()
    }

    /// `sum_j T_ijkj`, the Ricci-type contraction in an orthonormal frame.
    pub fn ricci_contraction(&self) -> Sym2<T> {
        let n = self.n();
        let dense: Vec<T> = (0..n * n)
            .map(|ik| {
                let (i, k) = (ik / n, ik % n);
                (0..n).map(|j| self.get(i, j, k, j)).sum()
            })
            .collect();
        Sym2::from_dense(self.dim, &dense)
    }

    /// `g^{jl} T_ijkl`.
    pub fn ricci_contraction_with(&self, ginv: &Sym2<T>) -> Sym2<T> {
        let n = self.n();
        let mut dense = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let mut acc = T::zero();
                for j in 0..n {
                    for l in 0..n {
                        acc += ginv.get(j, l) * self.get(i, j, k, l);
                    }
                }
                dense[i * n + k] = acc;
            }
        }
        Sym2::from_dense(self.dim, &dense)
    }

    /// `T_ijkl a_jl b_ik`, the form written `W_ijkl phi_jl phi_ik` when `a = b = phi`.
    pub fn quadratic_form(&self, a: &Sym2<T>, b: &Sym2<T>) -> T {
        let n = self.n();
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let bik = b.get(i, k);
                    if bik == T::zero() {
                        continue;
                    }
                    for l in 0..n {
                        acc += self.get(i, j, k, l) * a.get(j, l) * bik;
                    }
                }
            }
        }
        acc
    }

    /// `(T s)_ij = T_ikjl s_kl`.
    pub fn contract_sym2(&self, s: &Sym2<T>) -> Sym2<T> {
        let n = self.n();
        let mut dense = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    for l in 0..n {
                        acc += self.get(i, k, j, l) * s.get(k, l);
                    }
                }
                dense[i * n + j] = acc;
            }
        }
        Sym2::from_dense(self.dim, &dense)
    }
}

/// Full contraction `sum A_ijkl B_ijkl`.
pub fn inner<T: Real>(a: &Alg4<T>, b: &Alg4<T>) -> Result<T> {
    a.dim.same(b.dim)?;
    Ok(a.v.iter().zip(&b.v).map(|(&x, &y)| x * y).sum())
}

/// `inner(a, a)`.
pub fn norm2<T: Real>(a: &Alg4<T>) -> T {
    a.norm2()
}

fn kn_unchecked<T: Real>(a: &Sym2<T>, b: &Sym2<T>) -> Alg4<T> {
    let n = a.n();
    let mut v = vec![T::zero(); n.pow(4)];
    // Fill one representative per (pair, pair) block and copy out by symmetry,
    // so the declared flags hold bit for bit.
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                for l in (k + 1)..n {
                    if (k, l) < (i, j) {
                        continue;
                    }
                    let x = (a.get(i, k) * b.get(j, l) + a.get(j, l) * b.get(i, k))
                        - (a.get(i, l) * b.get(j, k) + a.get(j, k) * b.get(i, l));
                    for &(p, q, r, s, sign) in &[
                        (i, j, k, l, 1),
                        (j, i, k, l, -1),
                        (i, j, l, k, -1),
                        (j, i, l, k, 1),
                        (k, l, i, j, 1),
                        (l, k, i, j, -1),
                        (k, l, j, i, -1),
                        (l, k, j, i, 1),
                    ] {
                        v[idx(n, p, q, r, s)] = if sign > 0 { x } else { -x };
                    }
                }
            }
        }
    }
    Alg4 {
        dim: a.dim(),
        v,
        flags: Symmetry::ANTISYM12 | Symmetry::ANTISYM34 | Symmetry::PAIR,
        residual: T::zero(),
    }
}

/// Kulkarni–Nomizu product
/// `(A ∧ B)_ijkl = A_ik B_jl - A_il B_jk + A_jl B_ik - A_jk B_il`.
pub fn kulkarni_nomizu<T: Real>(a: &Sym2<T>, b: &Sym2<T>) -> Result<Alg4<T>> {
    a.dim().same(b.dim())?;
    Ok(kn_unchecked(a, b))
}

/// Relative tolerance for the trace consistency of [`weyl_from_riemann`] inputs.
pub const TRACE_TOLERANCE: f64 = 1e-8;

/// Weyl tensor in the traceless-Ricci form
/// `W = Rm - (Ric0 ∧ g)/(n-2) - R/(2n(n-1)) g ∧ g`.
pub fn weyl_from_riemann<T: Real>(
    riem: &Alg4<T>,
    ric: &Sym2<T>,
    scalar: T,
    g: &Sym2<T>,
) -> Result<Alg4<T>> {
    let dim = riem.dim.same(ric.dim())?.same(g.dim())?;
    riem.require(Symmetry::RIEMANN)?;
    let ginv = g.inverse()?;
    let traced = riem.ricci_contraction_with(&ginv);
    let scale = T::one().max(ric.max_abs()).max(scalar.abs());
    let tol = T::lit(TRACE_TOLERANCE) * scale;
    let ric_res = (traced - *ric).max_abs();
    let r_res = (ric.trace_with(&ginv) - scalar).abs();
    let res = ric_res.max(r_res);
    if res > tol {
        return Err(Error::TraceInconsistent {
            residual: res.to_f64_lossy(),
            tolerance: tol.to_f64_lossy(),
        });
    }
    let n = T::from_count(dim.get());
    let two = T::lit(2.0);
    let ric0 = *ric - *g * (scalar / n);
    let w = riem
        .sub_unchecked(&kn_unchecked(&ric0, g).scale(T::one() / (n - two)))
        .sub_unchecked(&kn_unchecked(g, g).scale(scalar / (two * n * (n - T::one()))));
    let residual = w.trace_residual_with(&ginv);
    Ok(w.with_flags(Symmetry::WEYL, residual))
}

/// Cubic Weyl invariant `2 W_ijkl W_ipkq W_pjql + 1/2 W_ijkl W_klpq W_pqij`.
pub fn cubic_weyl_form<T: Real>(w: &Alg4<T>) -> Result<T> {
    w.require(Symmetry::WEYL)?;
    let n = w.n();
    let n2 = n * n;

    // First term: with M[(i,k)][(j,l)] = W_ijkl the contraction is tr(M^3).
    let mut m = vec![T::zero(); n2 * n2];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    m[(i * n + k) * n2 + j * n + l] = w.get(i, j, k, l);
                }
            }
        }
    }
    let t1 = trace_cube_dense(&m, n2);

    // Second term: antisymmetric pairs collapse to i<j, each ordered triple of
    // pairs appearing 8 times with sign +1.
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let np = pairs.len();
    let mut b = vec![T::zero(); np * np];
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for (y, &(k, l)) in pairs.iter().enumerate() {
            b[x * np + y] = w.get(i, j, k, l);
        }
    }
    let t2 = trace_cube_dense(&b, np);

    Ok(T::lit(2.0) * t1 + T::lit(4.0) * t2)
}

/// `tr(A^3) = sum_xy A_xy (A^2)_yx` for a dense square matrix.
fn trace_cube_dense<T: Real>(a: &[T], d: usize) -> T {
    let mut sq = vec![T::zero(); d * d];
    for x in 0..d {
        let row = &mut sq[x * d..(x + 1) * d];
        for z in 0..d {
            let axz = a[x * d + z];
            if axz == T::zero() {
                continue;
            }
            let arow = &a[z * d..(z + 1) * d];
            for (r, &azy) in row.iter_mut().zip(arow) {
                *r += axz * azy;
            }
        }
    }
    let mut acc = T::zero();
    for x in 0..d {
        for y in 0..d {
            acc += a[y * d + x] * sq[x * d + y];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::sampling::{random_curvature, random_weyl_unit, rng_for};

    fn d(n: usize) -> Dim {
        Dim::new(n).unwrap()
    }

    fn space_form(dim: Dim, k: f64, block: &[usize]) -> Alg4<f64> {
        Alg4::from_fn(dim, |i, j, kk, l| {
            let inb = |x| block.contains(&x);
            if !(inb(i) && inb(j) && inb(kk) && inb(l)) {
                return 0.0;
            }
            let dl = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
            k * (dl(i, kk) * dl(j, l) - dl(i, l) * dl(j, kk))
        })
        .project(Symmetry::RIEMANN)
    }

    fn brute_cubic(w: &Alg4<f64>) -> f64 {
        let n = w.n();
        let mut a = 0.0;
        let mut b = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for p in 0..n {
                            for q in 0..n {
                                a += w.get(i, j, k, l) * w.get(i, p, k, q) * w.get(p, j, q, l);
                                b += w.get(i, j, k, l) * w.get(k, l, p, q) * w.get(p, q, i, j);
                            }
                        }
                    }
                }
            }
        }
        2.0 * a + 0.5 * b
    }

    #[test]
    fn kn_of_metric_norm() {
        for n in 4..=8 {
            let g = Sym2::<f64>::identity(d(n));
            let gg = kulkarni_nomizu(&g, &g).unwrap();
            let expect = 8.0 * (n * (n - 1)) as f64;
            assert!((gg.norm2() - expect).abs() < 1e-12);
            for f in [Symmetry::ANTISYM12, Symmetry::ANTISYM34, Symmetry::PAIR, Symmetry::BIANCHI] {
                assert_eq!(gg.violation(f), 0.0);
            }
        }
    }

    #[test]
    fn round_sphere_is_conformally_flat() {
        let dim = d(5);
        let all: Vec<usize> = (0..5).collect();
        let r = space_form(dim, 1.0, &all);
        let g = Sym2::identity(dim);
        let ric = g * 4.0;
        let w = weyl_from_riemann(&r, &ric, 20.0, &g).unwrap();
        assert!(w.max_abs() < 1e-14);
        assert!(w.flags().contains(Symmetry::WEYL));
    }

    #[test]
    fn product_of_spheres_weyl() {
        let dim = d(4);
        let r = space_form(dim, 1.0, &[0, 1])
            .add(&space_form(dim, 1.0, &[2, 3]))
            .unwrap();
        let g = Sym2::identity(dim);
        let w = weyl_from_riemann(&r, &g, 4.0, &g).unwrap();
        assert!((w.norm2() - 16.0 / 3.0).abs() < 1e-12);
        let c = cubic_weyl_form(&w).unwrap();
        assert!((c - 16.0 / 3.0).abs() < 1e-12);
        assert!((c - brute_cubic(&w)).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_traces_rejected() {
        let dim = d(4);
        let all: Vec<usize> = (0..4).collect();
        let r = space_form(dim, 1.0, &all);
        let g = Sym2::identity(dim);
        let err = weyl_from_riemann(&r, &(g * 3.0), 13.0, &g);
        assert!(matches!(err, Err(Error::TraceInconsistent { .. })));
    }

    #[test]
    fn cubic_needs_weyl_flags() {
        let dim = d(4);
        let g = Sym2::<f64>::identity(dim);
        let gg = kulkarni_nomizu(&g, &g).unwrap();
        assert!(matches!(cubic_weyl_form(&gg), Err(Error::FlagViolation(_))));
    }

    #[test]
    fn cubic_matches_brute_force() {
        for n in 4..=6 {
            let mut rng = rng_for(11, n as u64);
            let w: Alg4<f64> = random_weyl_unit(d(n), &mut rng);
            let fast = cubic_weyl_form(&w).unwrap();
            assert!((fast - brute_cubic(&w)).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let mut rng = rng_for(3, 0);
        let r: Alg4<f64> = random_curvature(d(4), &mut rng);
        let again = r.clone().project(Symmetry::RIEMANN);
        assert!(again.residual() < 1e-14);
        let w = r.project(Symmetry::WEYL);
        for f in [
            Symmetry::ANTISYM12,
            Symmetry::ANTISYM34,
            Symmetry::PAIR,
            Symmetry::BIANCHI,
            Symmetry::TRACEFREE,
        ] {
            assert!(w.violation(f) < 1e-13, "{f:?}");
        }
    }

    #[test]
    fn f32_path() {
        let dim = d(4);
        let g = Sym2::<f32>::identity(dim);
        let gg = kulkarni_nomizu(&g, &g).unwrap();
        assert!((gg.norm2() - 96.0).abs() < 1e-4);
    }
}

use std::ops::{Add, Mul, Neg, Sub};

use super::dim::{Dim, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::Real;

const PACKED: usize = MAX_DIM * (MAX_DIM + 1) / 2;

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    b * (b + 1) / 2 + a
}

/// Symmetric 2-tensor. Only the upper triangle is stored, so `A[i][j] == A[j][i]`
/// holds exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sym2<T> {
    dim: Dim,
    v: [T; PACKED],
}

impl<T: Real> Sym2<T> {
    pub fn zeros(dim: Dim) -> Self {
        Sym2 {
            dim,
            v: [T::zero(); PACKED],
        }
    }

    pub fn identity(dim: Dim) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(dim: Dim, d: &[T]) -> Self {
        Self::from_fn(dim, |i, j| if i == j { d[i] } else { T::zero() })
    }

    /// Builds from `f(i, j)`, evaluated on the upper triangle only.
    pub fn from_fn(dim: Dim, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut s = Self::zeros(dim);
        let n = dim.get();
        for j in 0..n {
            for i in 0..=j {
                s.v[packed(i, j)] = f(i, j);
            }
        }
        s
    }

    /// Symmetrizes a dense row-major `n x n` array.
    pub fn from_dense(dim: Dim, a: &[T]) -> Self {
        let n = dim.get();
        let half = T::lit(0.5);
        Self::from_fn(dim, |i, j| half * (a[i * n + j] + a[j * n + i]))
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
    pub fn get(&self, i: usize, j: usize) -> T {
        self.v[packed(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.v[packed(i, j)] = x;
    }

    pub fn to_dense(&self) -> Vec<T> {
        let n = self.n();
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.get(i, j);
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        let mut s = *self;
        let m = self.n() * (self.n() + 1) / 2;
        for x in &mut s.v[..m] {
            *x = f(*x);
        }
        s
    }

    /// Plain trace, sum of diagonal entries.
    pub fn trace(&self) -> T {
        (0..self.n()).map(|i| self.get(i, i)).sum()
    }

    /// Full contraction `sum_ij A_ij B_ij`.
    pub fn dot(&self, other: &Self) -> T {
        let n = self.n();
        let mut acc = T::zero();
        for i in 0..n {
            acc += self.get(i, i) * other.get(i, i);
            for j in (i + 1)..n {
                acc += T::lit(2.0) * self.get(i, j) * other.get(i, j);
            }
        }
        acc
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm2().sqrt()
    }

    /// `(A^2)_ij = A_ik A_kj`.
    pub fn square(&self) -> Self {
        let n = self.n();
        Self::from_fn(self.dim, |i, j| (0..n).map(|k| self.get(i, k) * self.get(k, j)).sum())
    }

    /// `A_ij A_jk A_ki`.
    pub fn trace_cube(&self) -> T {
        self.square().dot(self)
    }

    /// `g^{ij} A_ij` for a supplied inverse metric.
    pub fn trace_with(&self, ginv: &Self) -> T {
        self.dot(ginv)
    }

    pub fn max_abs(&self) -> T {
        let m = self.n() * (self.n() + 1) / 2;
        self.v[..m].iter().fold(T::zero(), |a, &x| a.max(x.abs()))
    }

    /// Lower Cholesky factor as a dense row-major array; `None` unless the
    /// matrix is positive definite.
    pub fn cholesky(&self) -> Option<Vec<T>> {
        let n = self.n();
        let mut l = vec![T::zero(); n * n];
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > T::zero()) {
                return None;
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        Some(l)
    }

    /// True when the smallest eigenvalue exceeds `floor`.
    pub fn is_positive_definite_above(&self, floor: T) -> bool {
        let shifted = *self - Self::identity(self.dim) * floor;
        shifted.cholesky().is_some()
    }

    pub fn determinant(&self) -> Option<T> {
        let l = self.cholesky()?;
        let n = self.n();
        let d: T = (0..n).map(|i| l[i * n + i]).fold(T::one(), |a, b| a * b);
        Some(d * d)
    }

    /// Inverse of a positive-definite matrix.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n();
        let l = self
            .cholesky()
            .ok_or_else(|| Error::Precondition("matrix is not positive definite".into()))?;
        // L^{-1} by forward substitution, then A^{-1} = L^{-T} L^{-1}.
        let mut linv = vec![T::zero(); n * n];
        for c in 0..n {
            for i in c..n {
                let mut s = if i == c { T::one() } else { T::zero() };
                for k in c..i {
                    s -= l[i * n + k] * linv[k * n + c];
                }
                linv[i * n + c] = s / l[i * n + i];
            }
        }
        Ok(Self::from_fn(self.dim, |i, j| {
            (i.max(j)..n).map(|k| linv[k * n + i] * linv[k * n + j]).sum()
        }))
    }
}

impl<T: Real> Add for Sym2<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.v.iter_mut().zip(rhs.v.iter()) {
            *a += *b;
        }
        self
    }
}

impl<T: Real> Sub for Sym2<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.v.iter_mut().zip(rhs.v.iter()) {
            *a -= *b;
        }
        self
    }
}

impl<T: Real> Mul<T> for Sym2<T> {
    type Output = Self;
    fn mul(mut self, s: T) -> Self {
        for a in self.v.iter_mut() {
            *a *= s;
        }
        self
    }
}

impl<T: Real> Neg for Sym2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self * (-T::one())
    }
}

/// Removes the `g`-trace: `A - (tr_g A / n) g`.
pub fn tracefree_project<T: Real>(a: &Sym2<T>, g: &Sym2<T>) -> Result<Sym2<T>> {
    a.dim().same(g.dim())?;
    let ginv = g.inverse()?;
    let tr = a.trace_with(&ginv);
    Ok(*a - *g * (tr / T::from_count(a.n())))
}

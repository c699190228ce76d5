use super::dim::Dim;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense 3-index tensor, row-major `[i][j][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<T> {
    dim: Dim,
    v: Vec<T>,
}

impl<T: Real> Tensor3<T> {
    pub fn zeros(dim: Dim) -> Self {
        let n = dim.get();
        Tensor3 {
            dim,
            v: vec![T::zero(); n * n * n],
        }
    }

    pub fn from_values(dim: Dim, v: Vec<T>) -> Result<Self> {
        let n = dim.get();
        if v.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                left: v.len(),
                right: n * n * n,
            });
        }
        Ok(Tensor3 { dim, v })
    }

    pub fn from_fn(dim: Dim, mut f: impl FnMut(usize, usize, usize) -> T) -> Self {
        let n = dim.get();
        let mut v = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    v.push(f(i, j, k));
                }
            }
        }
        Tensor3 { dim, v }
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        let n = self.dim.get();
        self.v[(i * n + j) * n + k]
    }

    pub fn values(&self) -> &[T] {
        &self.v
    }

    pub fn norm2(&self) -> T {
        self.v.iter().map(|&x| x * x).sum()
    }

    pub fn max_abs(&self) -> T {
        self.v.iter().fold(T::zero(), |a, &x| a.max(x.abs()))
    }
}

use rayon::prelude::*;

use super::grid::Chart;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{Alg4, Sym2, Symmetry, Tensor3};

/// Dense covariant tensor field: `n^rank` components per grid point,
/// point-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T> {
    rank: usize,
    n: usize,
    comps: usize,
    /// Per component, bitmask of axes whose index occurs an odd number of times.
    odd: Vec<u8>,
    data: Vec<T>,
}

fn odd_masks(n: usize, rank: usize) -> Vec<u8> {
    let comps = n.pow(rank as u32);
    (0..comps)
        .map(|mut c| {
            let mut m = 0u8;
            for _ in 0..rank {
                m ^= 1 << (c % n);
                c /= n;
            }
            m
        })
        .collect()
}

impl<T: Real> Field<T> {
    pub fn zeros(chart: &Chart<T>, rank: usize) -> Self {
        let n = chart.n();
        let comps = n.pow(rank as u32);
        Field {
            rank,
            n,
            comps,
            odd: odd_masks(n, rank),
            data: vec![T::zero(); comps * chart.len()],
        }
    }

    /// Fills each point's components in parallel.
    pub fn from_fn<F>(chart: &Chart<T>, rank: usize, f: F) -> Self
    where
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        let mut out = Self::zeros(chart, rank);
        let comps = out.comps;
        out.data
            .par_chunks_mut(comps)
            .enumerate()
            .for_each(|(p, o)| f(p, o));
        out
    }

    /// As [`Field::from_fn`], stopping at the first error.
    pub fn try_from_fn<F>(chart: &Chart<T>, rank: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, &mut [T]) -> Result<()> + Sync + Send,
    {
        let mut out = Self::zeros(chart, rank);
        let comps = out.comps;
        out.data
            .par_chunks_mut(comps)
            .enumerate()
            .try_for_each(|(p, o)| f(p, o))?;
        Ok(out)
    }

    pub fn from_values(chart: &Chart<T>, rank: usize, data: Vec<T>) -> Result<Self> {
        let mut out = Self::zeros(chart, rank);
        if data.len() != out.data.len() {
            return Err(Error::DimensionMismatch {
                left: data.len(),
                right: out.data.len(),
            });
        }
        out.data = data;
        Ok(out)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn comps(&self) -> usize {
        self.comps
    }

    #[inline]
    pub fn points(&self) -> usize {
        self.data.len() / self.comps
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    #[inline]
    pub fn at(&self, p: usize) -> &[T] {
        &self.data[p * self.comps..(p + 1) * self.comps]
    }

    #[inline]
    pub fn at_mut(&mut self, p: usize) -> &mut [T] {
        &mut self.data[p * self.comps..(p + 1) * self.comps]
    }

    /// Component `c` at point `q`, with the sign picked up under the mirror
    /// images in `flips`.
    #[inline]
    pub fn signed(&self, q: usize, c: usize, flips: u8) -> T {
        let x = self.data[q * self.comps + c];
        if (self.odd[c] & flips).count_ones() % 2 == 1 {
            -x
        } else {
            x
        }
    }

    /// Whether mirroring in `flips` negates component `c`.
    #[inline]
    pub fn flips_sign(&self, c: usize, flips: u8) -> bool {
        (self.odd[c] & flips).count_ones() % 2 == 1
    }

    #[inline]
    pub fn scalar(&self, p: usize) -> T {
        self.data[p * self.comps]
    }

    pub fn sym2(&self, p: usize) -> Sym2<T> {
        debug_assert_eq!(self.rank, 2);
        Sym2::from_dense(crate::tensor::Dim::new(self.n).expect("valid"), self.at(p))
    }

    pub fn tensor3(&self, p: usize) -> Tensor3<T> {
        debug_assert_eq!(self.rank, 3);
        Tensor3::from_values(crate::tensor::Dim::new(self.n).expect("valid"), self.at(p).to_vec())
            .expect("n^3 components")
    }

    /// Components at `p` as an [`Alg4`] declaring `flags`.
    pub fn alg4(&self, p: usize, flags: Symmetry) -> Alg4<T> {
        debug_assert_eq!(self.rank, 4);
        Alg4::from_values(crate::tensor::Dim::new(self.n).expect("valid"), self.at(p).to_vec())
            .expect("n^4 components")
            .with_flags(flags, T::zero())
    }

    /// Pointwise map to a scalar field.
    pub fn map_scalar(&self, chart: &Chart<T>, f: impl Fn(&[T]) -> T + Sync + Send) -> Field<T> {
        Field::from_fn(chart, 0, |p, o| o[0] = f(self.at(p)))
    }

    /// Largest absolute component over the points where `keep` holds.
    pub fn max_abs_where(&self, keep: impl Fn(usize) -> bool) -> T {
        (0..self.points())
            .filter(|&p| keep(p))
            .flat_map(|p| self.at(p).iter().copied())
            .fold(T::zero(), |m, x| m.max(x.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_counts_axis_occurrences() {
        let m = odd_masks(4, 2);
        // component (0,0): axis 0 twice -> even
        assert_eq!(m[0], 0);
        // component (0,1): axes 0 and 1 once each
        assert_eq!(m[1], 0b11);
        let m3 = odd_masks(4, 3);
        // (2,2,3)
        assert_eq!(m3[2 * 16 + 2 * 4 + 3], 0b1000);
    }
}

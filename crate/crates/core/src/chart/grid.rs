use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{Dim, MAX_DIM};

/// Smallest per-axis point count accepted by [`Chart::new`].
pub const MIN_RESOLUTION: usize = 8;

/// Boundary behaviour of one chart axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisKind {
    /// Indices wrap around.
    Periodic,
    /// Mirror about both ends of the interval. Ghost values of tensor
    /// components change sign once per occurrence of this axis' index.
    Reflecting,
    /// Indices clamp to the end cells; only usable with an excised margin.
    Open,
}

/// One coordinate axis: cell-centred samples `lo + (i + 1/2) h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis<T> {
    pub lo: T,
    pub hi: T,
    pub count: usize,
    pub kind: AxisKind,
    /// Cells excluded at each end.
    pub margin: usize,
}

impl<T: Real> Axis<T> {
    pub fn new(lo: T, hi: T, count: usize, kind: AxisKind) -> Self {
        Axis {
            lo,
            hi,
            count,
            kind,
            margin: 0,
        }
    }

    pub fn periodic(lo: T, hi: T, count: usize) -> Self {
        Self::new(lo, hi, count, AxisKind::Periodic)
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.margin = margin;
        self
    }

    #[inline]
    pub fn h(&self) -> T {
        (self.hi - self.lo) / T::from_count(self.count)
    }

    #[inline]
    pub fn coord(&self, i: usize) -> T {
        self.lo + (T::from_count(i) + T::lit(0.5)) * self.h()
    }

    #[inline]
    pub fn is_retained(&self, i: usize) -> bool {
        i >= self.margin && i + self.margin < self.count
    }

    /// Index reached from `i` after `off` steps, and whether it was mirrored.
    #[inline]
    pub fn step(&self, i: usize, off: isize) -> (usize, bool) {
        let c = self.count as isize;
        let j = i as isize + off;
        match self.kind {
            AxisKind::Periodic => (j.rem_euclid(c) as usize, false),
            AxisKind::Open => (j.clamp(0, c - 1) as usize, false),
            AxisKind::Reflecting => {
                if j < 0 {
                    ((-1 - j) as usize, true)
                } else if j >= c {
                    ((2 * c - 1 - j) as usize, true)
                } else {
                    (j as usize, false)
                }
            }
        }
    }
}

/// Multi-index of a grid point.
pub type Index = [usize; MAX_DIM];

/// Tensor-product grid over a coordinate box.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart<T> {
    dim: Dim,
    axes: Vec<Axis<T>>,
    strides: Vec<usize>,
    len: usize,
}

impl<T: Real> Chart<T> {
    pub fn new(dim: Dim, axes: Vec<Axis<T>>) -> Result<Self> {
        if axes.len() != dim.get() {
            return Err(Error::DimensionMismatch {
                left: axes.len(),
                right: dim.get(),
            });
        }
        for (a, ax) in axes.iter().enumerate() {
            if ax.count < MIN_RESOLUTION {
                return Err(Error::InvalidChart(format!(
                    "axis {a}: resolution {} below minimum {MIN_RESOLUTION}",
                    ax.count
                )));
            }
            if !(ax.hi > ax.lo) || !ax.lo.is_finite() || !ax.hi.is_finite() {
                return Err(Error::InvalidChart(format!("axis {a}: empty interval")));
            }
            if 2 * ax.margin >= ax.count {
                return Err(Error::InvalidChart(format!(
                    "axis {a}: margin {} leaves no interior",
                    ax.margin
                )));
            }
            if ax.kind == AxisKind::Periodic && ax.margin != 0 {
                return Err(Error::InvalidChart(format!(
                    "axis {a}: periodic axes carry no margin"
                )));
            }
        }
        let mut strides = vec![1; axes.len()];
        for a in (0..axes.len().saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * axes[a + 1].count;
        }
        let len = axes.iter().map(|a| a.count).product();
        Ok(Chart {
            dim,
            axes,
            strides,
            len,
        })
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
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn axes(&self) -> &[Axis<T>] {
        &self.axes
    }

    #[inline]
    pub fn h(&self, a: usize) -> T {
        self.axes[a].h()
    }

    pub fn spacing(&self) -> Vec<T> {
        self.axes.iter().map(|a| a.h()).collect()
    }

    /// Coordinate volume of one cell.
    pub fn cell_volume(&self) -> T {
        self.axes.iter().fold(T::one(), |v, a| v * a.h())
    }

    #[inline]
    pub fn unravel(&self, mut p: usize) -> Index {
        let mut idx = [0; MAX_DIM];
        for a in (0..self.n()).rev() {
            let c = self.axes[a].count;
            idx[a] = p % c;
            p /= c;
        }
        idx
    }

    pub fn coords(&self, p: usize) -> Vec<T> {
        let idx = self.unravel(p);
        (0..self.n()).map(|a| self.axes[a].coord(idx[a])).collect()
    }

    #[inline]
    pub fn is_retained(&self, p: usize) -> bool {
        let idx = self.unravel(p);
        (0..self.n()).all(|a| self.axes[a].is_retained(idx[a]))
    }

    pub fn retained_count(&self) -> usize {
        self.axes
            .iter()
            .map(|a| a.count - 2 * a.margin)
            .product()
    }

    pub fn excised_fraction(&self) -> f64 {
        1.0 - self.retained_count() as f64 / self.len as f64
    }

    pub fn has_excision(&self) -> bool {
        self.axes.iter().any(|a| a.margin > 0)
    }

    /// Flat index after `off` steps along `axis`, with a bitmask of mirrored axes.
    #[inline]
    pub fn shift(&self, p: usize, idx: &Index, axis: usize, off: isize) -> (usize, u8) {
        let i = idx[axis];
        let (j, flip) = self.axes[axis].step(i, off);
        let q = p + j * self.strides[axis] - i * self.strides[axis];
        (q, if flip { 1 << axis } else { 0 })
    }

    /// As [`Chart::shift`] along two distinct axes.
    #[inline]
    pub fn shift2(
        &self,
        p: usize,
        idx: &Index,
        a: usize,
        oa: isize,
        b: usize,
        ob: isize,
    ) -> (usize, u8) {
        let (q, fa) = self.shift(p, idx, a, oa);
        let (q, fb) = self.shift(q, idx, b, ob);
        (q, fa | fb)
    }

    /// Same chart with each axis' resolution replaced.
    pub fn with_resolution(&self, counts: &[usize]) -> Result<Self> {
        let axes = self
            .axes
            .iter()
            .zip(counts)
            .map(|(a, &c)| Axis { count: c, ..a.clone() })
            .collect();
        Self::new(self.dim, axes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflecting_mirrors_about_faces() {
        let ax = Axis::new(0.0, 1.0, 8, AxisKind::Reflecting);
        assert_eq!(ax.step(0, -1), (0, true));
        assert_eq!(ax.step(1, -3), (1, true));
        assert_eq!(ax.step(7, 1), (7, true));
        assert_eq!(ax.step(6, 2), (7, true));
        assert_eq!(ax.step(3, 2), (5, false));
    }

    #[test]
    fn periodic_wraps() {
        let ax = Axis::periodic(0.0, 1.0, 8);
        assert_eq!(ax.step(0, -1), (7, false));
        assert_eq!(ax.step(7, 2), (1, false));
    }

    #[test]
    fn unravel_matches_strides() {
        let d = Dim::new(4).unwrap();
        let axes = (0..4).map(|i| Axis::periodic(0.0, 1.0, 8 + i)).collect();
        let c = Chart::new(d, axes).unwrap();
        let p = 1234;
        let idx = c.unravel(p);
        let (q, _) = c.shift(p, &idx, 2, 1);
        let j = c.unravel(q);
        assert_eq!(j[2], (idx[2] + 1) % 10);
        assert_eq!(j[0], idx[0]);
    }

    #[test]
    fn rejects_coarse_axes() {
        let d = Dim::new(4).unwrap();
        let axes = (0..4).map(|_| Axis::periodic(0.0, 1.0, 7)).collect();
        assert!(Chart::new(d, axes).is_err());
    }
}

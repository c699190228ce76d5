use super::field::Field;
use super::grid::Chart;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::Sym2;

/// Smallest eigenvalue a metric must exceed at every retained point.
pub const SPD_FLOOR: f64 = 1e-10;

/// Metric sampled on a chart, with its inverse and volume density.
#[derive(Clone, Debug)]
pub struct MetricField<T> {
    chart: Chart<T>,
    g: Field<T>,
    ginv: Field<T>,
    sqrt_det: Field<T>,
}

impl<T: Real> MetricField<T> {
    /// Validates positivity at retained points. Excised points that fail
    /// get a zero inverse and zero density.
    pub fn new(chart: Chart<T>, g: Field<T>) -> Result<Self> {
        if g.rank() != 2 || g.points() != chart.len() {
            return Err(Error::InvalidGeometry("metric field has wrong shape".into()));
        }
        let floor = T::lit(SPD_FLOOR);
        for p in 0..chart.len() {
            if chart.is_retained(p) {
                let gp = g.sym2(p);
                if !gp.is_positive_definite_above(floor) {
                    return Err(Error::SingularMetric(p));
                }
            }
        }
        let n = chart.n();
        let ginv = Field::from_fn(&chart, 2, |p, o| {
            if let Ok(inv) = g.sym2(p).inverse() {
                o.copy_from_slice(&inv.to_dense());
            } else {
                debug_assert!(o.len() == n * n);
            }
        });
        let sqrt_det = Field::from_fn(&chart, 0, |p, o| {
            o[0] = g.sym2(p).determinant().map(|d| d.sqrt()).unwrap_or(T::zero());
        });
        Ok(MetricField {
            chart,
            g,
            ginv,
            sqrt_det,
        })
    }

    /// Samples `f(x)` at every cell centre.
    pub fn from_fn(chart: Chart<T>, f: impl Fn(&[T]) -> Sym2<T> + Sync + Send) -> Result<Self> {
        let g = Field::from_fn(&chart, 2, |p, o| {
            o.copy_from_slice(&f(&chart.coords(p)).to_dense());
        });
        Self::new(chart, g)
    }

    pub fn chart(&self) -> &Chart<T> {
        &self.chart
    }

    pub fn g(&self) -> &Field<T> {
        &self.g
    }

    pub fn ginv(&self) -> &Field<T> {
        &self.ginv
    }

    pub fn sqrt_det(&self) -> &Field<T> {
        &self.sqrt_det
    }

    #[inline]
    pub fn g_at(&self, p: usize) -> Sym2<T> {
        self.g.sym2(p)
    }

    #[inline]
    pub fn ginv_at(&self, p: usize) -> Sym2<T> {
        self.ginv.sym2(p)
    }

    /// Whether the metric at `p` could be inverted.
    #[inline]
    pub fn is_regular(&self, p: usize) -> bool {
        self.sqrt_det.scalar(p) > T::zero()
    }
}

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Central first-derivative stencils of order 2 or 4.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil<T> {
    order: usize,
    first: Vec<(isize, T)>,
}

impl<T: Real> Stencil<T> {
    pub fn new(order: usize) -> Result<Self> {
        let l = T::lit;
        let first = match order {
            2 => vec![(-1, l(-0.5)), (1, l(0.5))],
            4 => vec![
                (-2, l(1.0 / 12.0)),
                (-1, l(-2.0 / 3.0)),
                (1, l(2.0 / 3.0)),
                (2, l(-1.0 / 12.0)),
            ],
            _ => {
                return Err(Error::Precondition(format!(
                    "stencil order must be 2 or 4, got {order}"
                )))
            }
        };
        Ok(Stencil { order, first })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn radius(&self) -> usize {
        self.order / 2
    }

    /// Nonzero taps of the first-derivative stencil (unit spacing).
    #[inline]
    pub fn first(&self) -> &[(isize, T)] {
        &self.first
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(taps: &[(isize, f64)], f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        taps.iter().map(|&(o, c)| c * f(x + o as f64 * h)).sum()
    }

    #[test]
    fn convergence_orders() {
        for order in [2, 4] {
            let s = Stencil::<f64>::new(order).unwrap();
            let err = |h: f64| (apply(s.first(), f64::sin, 0.3, h) / h - 0.3f64.cos()).abs();
            let ratio = err(0.1) / err(0.05);
            let expect = 2f64.powi(order as i32);
            assert!((ratio / expect - 1.0).abs() < 0.05, "order {order}: {ratio}");
        }
    }

    #[test]
    fn polynomials_exact() {
        let s = Stencil::<f64>::new(4).unwrap();
        let f = |x: f64| x.powi(4) - 2.0 * x.powi(3);
        let d = apply(s.first(), f, 0.7, 0.1) / 0.1;
        assert!((d - (4.0 * 0.7f64.powi(3) - 6.0 * 0.49)).abs() < 1e-12);
        assert!(Stencil::<f64>::new(3).is_err());
    }
}

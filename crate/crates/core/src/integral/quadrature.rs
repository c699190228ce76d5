use rayon::prelude::*;

use crate::chart::{Field, MetricField};
use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Real};

/// Which grid points enter a quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Every cell. Used for integrands built from at most two derivatives of
    /// the metric.
    All,
    /// Only cells outside the excision bands.
    Retained,
}

/// Largest fraction of excised grid points accepted by [`integrate`].
pub const DEFAULT_MAX_EXCISED: f64 = 0.75;

fn check_excision<T: Real>(m: &MetricField<T>, region: Region, bound: f64) -> Result<()> {
    let fraction = m.chart().excised_fraction();
    if region == Region::Retained && fraction > bound {
        return Err(Error::ExcisionTooLarge { fraction, bound });
    }
    Ok(())
}

/// Midpoint rule `Σ f(p) √det g(p) Πh` over `region`, evaluating `f` in
/// parallel and summing pairwise in grid order.
pub fn integrate_with<T: Real>(
    m: &MetricField<T>,
    region: Region,
    f: impl Fn(usize) -> Result<T> + Sync + Send,
) -> Result<T> {
    check_excision(m, region, DEFAULT_MAX_EXCISED)?;
    let chart = m.chart();
    let values: Vec<T> = (0..chart.len())
        .into_par_iter()
        .map(|p| {
            let keep = match region {
                Region::All => true,
                Region::Retained => chart.is_retained(p),
            };
            if !keep {
                return Ok(T::zero());
            }
            if !m.is_regular(p) {
                return Err(Error::SingularMetric(p));
            }
            Ok(f(p)? * m.sqrt_det().scalar(p))
        })
        .collect::<Result<_>>()?;
    Ok(pairwise_sum(&values) * chart.cell_volume())
}

/// `∫ f dv_g` of a scalar field over the retained region.
pub fn integrate<T: Real>(m: &MetricField<T>, f: &Field<T>) -> Result<T> {
    if f.rank() != 0 || f.points() != m.chart().len() {
        return Err(Error::InvalidGeometry("integrand must be a scalar field on the chart".into()));
    }
    integrate_with(m, Region::Retained, |p| Ok(f.scalar(p)))
}

/// `∫ f dv_g` of a scalar field over the whole grid.
pub fn integrate_all<T: Real>(m: &MetricField<T>, f: &Field<T>) -> Result<T> {
    if f.rank() != 0 || f.points() != m.chart().len() {
        return Err(Error::InvalidGeometry("integrand must be a scalar field on the chart".into()));
    }
    integrate_with(m, Region::All, |p| Ok(f.scalar(p)))
}

/// Volume fraction not covered by the retained region; the error budget of
/// retained-region integrals of bounded integrands.
pub fn excised_volume_fraction<T: Real>(m: &MetricField<T>) -> Result<T> {
    let all = integrate_with(m, Region::All, |_| Ok(T::one()))?;
    let kept = integrate_with(m, Region::Retained, |_| Ok(T::one()))?;
    Ok((all - kept) / all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{build, GeometrySpec};

    #[test]
    fn torus_volume_and_trig() {
        let geo = build(&GeometrySpec::<f64>::flat_torus(4, 8)).unwrap();
        let m = &geo.metric;
        let vol = integrate_with(m, Region::All, |_| Ok(1.0)).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        assert!((vol - tau.powi(4)).abs() < 1e-10 * vol);
        let s = integrate_with(m, Region::All, |p| Ok(m.chart().coords(p)[0].sin())).unwrap();
        assert!(s.abs() < 1e-12);
    }
}

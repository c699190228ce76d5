use rayon::prelude::*;

use super::oracle::AnalyticOracle;
use crate::chart::{CurvatureBundle, MetricField};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Max-abs error of one bundle field against its closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldError<T> {
    pub field: &'static str,
    pub max_abs: T,
}

/// Per-field max-abs errors over retained points.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport<T> {
    pub spacing: Vec<T>,
    pub errors: Vec<FieldError<T>>,
}

impl<T: Real> OracleReport<T> {
    pub fn get(&self, field: &str) -> Option<T> {
        self.errors.iter().find(|e| e.field == field).map(|e| e.max_abs)
    }
}

/// Error ratio and empirical order of one field between two resolutions.
#[derive(Clone, Debug, PartialEq)]
pub struct Convergence<T> {
    pub field: &'static str,
    pub coarse: T,
    pub fine: T,
    pub ratio: T,
    pub order: T,
}

fn max_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()))
}

pub fn oracle_compare<T: Real>(
    metric: &MetricField<T>,
    bundle: &CurvatureBundle<T>,
    oracle: Option<&AnalyticOracle<T>>,
) -> Result<OracleReport<T>> {
    let oracle = oracle.ok_or(Error::MissingOracle)?;
    let chart = metric.chart();
    let r0 = oracle.scalar();
    let per_point: Vec<Result<[T; 9]>> = (0..chart.len())
        .into_par_iter()
        .filter(|&p| chart.is_retained(p))
        .map(|p| {
            let x = chart.coords(p);
            let mut e = [T::zero(); 9];
            e[0] = max_diff(bundle.gamma.at(p), &oracle.christoffel(&x));
            if let Some(r) = &bundle.riem {
                e[1] = max_diff(r.at(p), oracle.riemann(&x).values());
            }
            e[2] = max_diff(bundle.ric.at(p), &oracle.ricci(&x).to_dense());
            e[3] = (bundle.scalar.scalar(p) - r0).abs();
            e[4] = max_diff(bundle.ric0.at(p), &oracle.ricci0(&x).to_dense());
            let w = oracle.weyl(&x)?;
            if let Some(wf) = &bundle.weyl {
                e[5] = max_diff(wf.at(p), w.values());
            }
            let g = oracle.metric(&x);
            let wn2 = crate::tensor::Frame::orthonormal(&g)?.alg4(&w).norm2();
            e[6] = (bundle.weyl_norm2.scalar(p) - wn2).abs();
            e[7] = bundle.cotton.at(p).iter().fold(T::zero(), |m, &c| m.max(c.abs()));
            e[8] = max_diff(bundle.bach.at(p), &oracle.bach(&x)?.to_dense());
            Ok(e)
        })
        .collect();
    let mut worst = [T::zero(); 9];
    for e in per_point {
        let e = e?;
        for (w, v) in worst.iter_mut().zip(e) {
            *w = w.max(v);
        }
    }
    let names = [
        "christoffel",
        "riemann",
        "ricci",
        "scalar",
        "traceless-ricci",
        "weyl",
        "weyl-norm2",
        "cotton",
        "bach",
    ];
    let errors = names
        .iter()
        .zip(worst)
        .enumerate()
        .filter(|(i, _)| match i {
            1 => bundle.riem.is_some(),
            5 => bundle.weyl.is_some(),
            _ => true,
        })
        .map(|(_, (&field, max_abs))| FieldError { field, max_abs })
        .collect();
    Ok(OracleReport {
        spacing: chart.spacing(),
        errors,
    })
}

/// Ratios and orders for the fields present in both reports; `factor` is
/// the spacing ratio coarse/fine.
pub fn convergence<T: Real>(coarse: &OracleReport<T>, fine: &OracleReport<T>, factor: T) -> Vec<Convergence<T>> {
    coarse
        .errors
        .iter()
        .filter_map(|c| {
            let f = fine.get(c.field)?;
            let ratio = c.max_abs / f;
            Some(Convergence {
                field: c.field,
                coarse: c.max_abs,
                fine: f,
                ratio,
                order: ratio.ln() / factor.ln(),
            })
        })
        .collect()
}

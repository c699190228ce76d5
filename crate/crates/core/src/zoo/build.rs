use rand::Rng;

use super::oracle::AnalyticOracle;
use super::spec::{GeometryKind, GeometrySpec};
use crate::chart::{Axis, AxisKind, Chart, MetricField};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::sampling::rng_for;
use crate::tensor::{Dim, Sym2};

/// Riemannian factor of a diagonal product metric.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor<T> {
    /// Round `S^p` of radius `r` in polar angles `(ψ_1..ψ_{p-1}, φ)`.
    Sphere { p: usize, r: T },
    /// Circle of the given length, unit coefficient.
    Line { length: T },
}

impl<T: Real> Factor<T> {
    pub fn dim(&self) -> usize {
        match self {
            Factor::Sphere { p, .. } => *p,
            Factor::Line { .. } => 1,
        }
    }

    pub fn axis_kinds(&self) -> Vec<AxisKind> {
        match self {
            Factor::Sphere { p, .. } => {
                let mut v = vec![AxisKind::Reflecting; p - 1];
                v.push(AxisKind::Periodic);
                v
            }
            Factor::Line { .. } => vec![AxisKind::Periodic],
        }
    }

    fn extents(&self) -> Vec<(T, T)> {
        match self {
            Factor::Sphere { p, .. } => {
                let mut v = vec![(T::zero(), T::PI()); p - 1];
                v.push((T::zero(), T::TAU()));
                v
            }
            Factor::Line { length } => vec![(T::zero(), *length)],
        }
    }
}

/// Diagonal factors of an oracle geometry; the perturbed torus reports its
/// flat background.
pub fn factors<T: Real>(kind: &GeometryKind<T>) -> Vec<Factor<T>> {
    match kind {
        GeometryKind::RoundSphere { n, radius } => vec![Factor::Sphere { p: *n, r: *radius }],
        GeometryKind::FlatTorus { periods, .. } => {
            periods.iter().map(|&l| Factor::Line { length: l }).collect()
        }
        GeometryKind::ProductSpheres { p, q, r1, r2 } => vec![
            Factor::Sphere { p: *p, r: *r1 },
            Factor::Sphere { p: *q, r: *r2 },
        ],
        GeometryKind::PerturbedTorus { n, .. } => {
            vec![Factor::Line { length: T::TAU() }; *n]
        }
    }
}

/// A built geometry: sampled metric and, where available, its oracle.
#[derive(Clone, Debug)]
pub struct Geometry<T> {
    pub spec: GeometrySpec<T>,
    pub metric: MetricField<T>,
    pub oracle: Option<AnalyticOracle<T>>,
}

/// One trigonometric mode `A cos(k·x + phase)` of a perturbed torus.
#[derive(Clone, Debug, PartialEq)]
pub struct Mode<T> {
    pub coeff: Sym2<T>,
    pub wave: Vec<i32>,
    pub phase: T,
}

/// Seeded modes of the perturbed torus.
pub fn perturbation_modes<T: Real>(dim: Dim, seed: u64, modes: usize) -> Vec<Mode<T>> {
    let mut rng = rng_for(seed, 0);
    let n = dim.get();
    (0..modes)
        .map(|_| {
            let coeff = Sym2::from_fn(dim, |_, _| T::lit(rng.random_range(-1.0..=1.0)));
            let wave = loop {
                let k: Vec<i32> = (0..n).map(|_| rng.random_range(-1..=1)).collect();
                if k.iter().any(|&x| x != 0) {
                    break k;
                }
            };
            let phase = T::lit(rng.random_range(0.0..std::f64::consts::TAU));
            Mode { coeff, wave, phase }
        })
        .collect()
}

/// `δ + amplitude Σ A cos(k·x + phase)`.
pub fn perturbed_metric<T: Real>(dim: Dim, amplitude: T, modes: &[Mode<T>], x: &[T]) -> Sym2<T> {
    let mut s = Sym2::zeros(dim);
    for m in modes {
        let arg = m
            .wave
            .iter()
            .zip(x)
            .fold(m.phase, |acc, (&k, &xi)| acc + T::lit(k as f64) * xi);
        s = s + m.coeff * arg.cos();
    }
    Sym2::identity(dim) + s * amplitude
}

pub fn chart_for<T: Real>(spec: &GeometrySpec<T>) -> Result<Chart<T>> {
    let dim = spec.validate()?;
    let angle = spec.excision_angle();
    let mut axes = Vec::with_capacity(dim.get());
    for f in factors(&spec.kind) {
        for (kind, (lo, hi)) in f.axis_kinds().into_iter().zip(f.extents()) {
            let count = spec.resolution[axes.len()];
            let mut ax = Axis::new(lo, hi, count, kind);
            if kind == AxisKind::Reflecting {
                let cells = (angle / ax.h()).round().to_usize().unwrap_or(0);
                ax = ax.with_margin(cells);
            }
            axes.push(ax);
        }
    }
    Chart::new(dim, axes)
}

/// Samples the metric of `spec`; oracles exist for every kind except the
/// perturbed torus.
pub fn build<T: Real>(spec: &GeometrySpec<T>) -> Result<Geometry<T>> {
    let chart = chart_for(spec)?;
    let dim = chart.dim();
    let (metric, oracle) = match &spec.kind {
        GeometryKind::PerturbedTorus {
            amplitude,
            seed,
            modes,
            ..
        } => {
            let modes = perturbation_modes(dim, *seed, *modes);
            let amp = *amplitude;
            let m = MetricField::from_fn(chart, |x| perturbed_metric(dim, amp, &modes, x)).map_err(|e| match e {
                Error::SingularMetric(p) => Error::InvalidGeometry(format!(
                    "perturbation amplitude too large: metric not positive definite at point {p}"
                )),
                other => other,
            })?;
            (m, None)
        }
        kind => {
            let oracle = AnalyticOracle::new(dim, factors(kind));
            let m = MetricField::from_fn(chart, |x| oracle.metric(x))?;
            (m, Some(oracle))
        }
    };
    Ok(Geometry {
        spec: spec.clone(),
        metric,
        oracle,
    })
}

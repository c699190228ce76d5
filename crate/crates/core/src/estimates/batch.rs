use rand::Rng;
use rayon::prelude::*;

use super::cubic::cubic_bound_check;
use super::report::Witness;
use super::sharp::{combined_norm_residual, sharp_estimate, EstimateSample};
use super::tuv::{tuv_decompose, tuv_identity_residuals};
use crate::error::Result;
use crate::scalar::Real;
use crate::tensor::sampling::{gaussian, rng_for, random_tracefree_unit, random_weyl_unit};
use crate::tensor::{Dim, Sym2};

/// Samples handled sequentially per parallel task; fixes the reduction order.
const CHUNK: u64 = 1024;

/// Aggregate of a seeded random batch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BatchSummary<T> {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub violations: u64,
    /// Smallest `slack / rhs` (or `slack` when `rhs = 0`).
    pub min_relative_slack: T,
    pub worst: Option<Witness>,
    /// Largest `lhs / rhs`.
    pub max_ratio: T,
    /// Largest relative residual of the accompanying norm identities.
    pub max_identity_residual: T,
}

#[derive(Clone, Copy)]
struct Record<T> {
    rel_slack: T,
    ratio: T,
    satisfied: bool,
    identity: T,
}

fn run<T: Real>(
    n: usize,
    samples: u64,
    seed: u64,
    eval: impl Fn(u64) -> Result<Record<T>> + Sync,
) -> Result<BatchSummary<T>> {
    let chunks: Vec<u64> = (0..samples.div_ceil(CHUNK)).collect();
    let partial: Vec<Result<BatchSummary<T>>> = chunks
        .par_iter()
        .map(|&c| {
            let mut acc = BatchSummary {
                n,
                samples: 0,
                seed,
                violations: 0,
                min_relative_slack: T::infinity(),
                worst: None,
                max_ratio: T::zero(),
                max_identity_residual: T::zero(),
            };
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let r = eval(i)?;
                acc.samples += 1;
                acc.violations += u64::from(!r.satisfied);
                if r.rel_slack < acc.min_relative_slack {
                    acc.min_relative_slack = r.rel_slack;
                    acc.worst = Some(Witness::Sample(i));
                }
                acc.max_ratio = acc.max_ratio.max(r.ratio);
                acc.max_identity_residual = acc.max_identity_residual.max(r.identity);
            }
            Ok(acc)
        })
        .collect();
    let mut out: Option<BatchSummary<T>> = None;
    for p in partial {
        let p = p?;
        out = Some(match out {
            None => p,
            Some(mut a) => {
                a.samples += p.samples;
                a.violations += p.violations;
                if p.min_relative_slack < a.min_relative_slack {
                    a.min_relative_slack = p.min_relative_slack;
                    a.worst = p.worst;
                }
                a.max_ratio = a.max_ratio.max(p.max_ratio);
                a.max_identity_residual = a.max_identity_residual.max(p.max_identity_residual);
                a
            }
        });
    }
    Ok(out.unwrap_or(BatchSummary {
        n,
        samples: 0,
        seed,
        violations: 0,
        min_relative_slack: T::infinity(),
        worst: None,
        max_ratio: T::zero(),
        max_identity_residual: T::zero(),
    }))
}

fn relative<T: Real>(slack: T, rhs: T) -> T {
    if rhs > T::zero() {
        slack / rhs
    } else {
        slack
    }
}

/// Random sample `index` of stream `seed`: unit Weyl and tracefree parts
/// with log-normal scales, Gaussian `ρ`, `R` and `θ`.
pub fn random_sample<T: Real>(dim: Dim, seed: u64, index: u64) -> EstimateSample<T> {
    let mut rng = rng_for(seed, index);
    let sw = gaussian::<T, _>(&mut rng).exp();
    let sr = gaussian::<T, _>(&mut rng).exp();
    let w = random_weyl_unit(dim, &mut rng).scale(sw);
    let r0: Sym2<T> = random_tracefree_unit(dim, &mut rng) * sr;
    let nf = T::from_count(dim.get());
    let rho = gaussian::<T, _>(&mut rng) * nf;
    let r = gaussian::<T, _>(&mut rng) * nf;
    let theta = T::lit(rng.random_range(-10.0..10.0));
    EstimateSample { w, r0, r, rho, theta }
}

/// Sharp estimate over `samples` random configurations. The identity
/// residual covers the combined-norm identity and both T/U/V identities.
pub fn sample_sharp<T: Real>(dim: Dim, samples: u64, seed: u64) -> Result<BatchSummary<T>> {
    let g = Sym2::identity(dim);
    run(dim.get(), samples, seed, |i| {
        let s = random_sample::<T>(dim, seed, i);
        let rep = sharp_estimate(&s)?;
        let tuv = tuv_decompose(&s.r0, &g)?;
        let (a, b) = tuv_identity_residuals(&s.r0, &tuv);
        let c = combined_norm_residual(&s)?;
        Ok(Record {
            rel_slack: relative(rep.slack, rep.rhs),
            ratio: relative(rep.lhs, rep.rhs),
            satisfied: rep.satisfied,
            identity: a.max(b).max(c),
        })
    })
}

/// Cubic bound over random Weyl tensors; each sample is checked with both
/// signs and `max_ratio` is the largest `cubic / |W|³`.
pub fn sample_cubic<T: Real>(dim: Dim, samples: u64, seed: u64) -> Result<BatchSummary<T>> {
    run(dim.get(), samples, seed, |i| {
        let mut rng = rng_for(seed, i);
        let w = random_weyl_unit::<T, _>(dim, &mut rng);
        let plus = cubic_bound_check(&w)?;
        let minus = cubic_bound_check(&w.scale(-T::one()))?;
        let worst = plus.worse(minus);
        Ok(Record {
            rel_slack: relative(worst.slack, worst.rhs),
            ratio: plus.lhs.max(minus.lhs) / w.norm().powi(3),
            satisfied: plus.satisfied && minus.satisfied,
            identity: (plus.lhs + minus.lhs).abs(),
        })
    })
}

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(θ² - θ + 1) / (θ - 1)²`
pub fn theta_coefficient<T: Real>(theta: T) -> Result<T> {
    let d = theta - T::one();
    if d == T::zero() {
        return Err(Error::ThetaSingular);
    }
    Ok((theta * theta - theta + T::one()) / (d * d))
}

/// Golden-section minimum of a unimodal `f` on `[a, b]`.
pub fn golden_section<T: Real>(f: impl Fn(T) -> T, mut a: T, mut b: T, tol: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / T::lit(2.0);
    (x, f(x))
}

/// Excluded half-width around the pole at `θ = 1`.
pub const THETA_POLE_GAP: f64 = 1e-6;

/// Minimizes the θ coefficient over `[lo, hi] \ {1}` by searching each side
/// of the pole separately.
pub fn theta_minimize_on<T: Real>(lo: T, hi: T) -> (T, T) {
    let f = |t: T| theta_coefficient(t).unwrap_or(T::infinity());
    let gap = T::lit(THETA_POLE_GAP);
    let tol = T::lit(1e-12).max(T::epsilon().sqrt());
    let mut best = (T::nan(), T::infinity());
    if lo < T::one() - gap {
        let r = golden_section(f, lo, hi.min(T::one() - gap), tol);
        if r.1 < best.1 {
            best = r;
        }
    }
    if hi > T::one() + gap {
        let r = golden_section(f, lo.max(T::one() + gap), hi, tol);
        if r.1 < best.1 {
            best = r;
        }
    }
    best
}

/// Minimizer and minimum over `[-10, 10] \ {1}`.
pub fn theta_minimize<T: Real>() -> (T, T) {
    theta_minimize_on(T::lit(-10.0), T::lit(10.0))
}

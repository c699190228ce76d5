use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{kulkarni_nomizu, Alg4, Sym2};

/// Splitting of `R̊ ∧ R̊` into a totally tracefree part `T` and the pure
/// trace parts `U`, `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct TuvDecomposition<T> {
    pub t: Alg4<T>,
    pub u: Alg4<T>,
    pub v: Alg4<T>,
}

/// `|A|²_g` and `(A g^{-1} A)` for a symmetric 2-tensor.
pub(crate) fn norm2_and_square<T: Real>(a: &Sym2<T>, ginv: &Sym2<T>) -> (T, Sym2<T>) {
    let n = a.n();
    let ag = {
        let mut m = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = (0..n).map(|k| a.get(i, k) * ginv.get(k, j)).sum();
            }
        }
        m
    };
    let sq = Sym2::from_fn(a.dim(), |i, j| (0..n).map(|k| ag[i * n + k] * a.get(k, j)).sum());
    let norm2 = (0..n).map(|i| (0..n).map(|j| ag[i * n + j] * ag[j * n + i]).sum::<T>()).sum();
    (norm2, sq)
}

/// Relative trace tolerance accepted for `R̊`.
pub const TRACEFREE_TOLERANCE: f64 = 1e-10;

pub fn tuv_decompose<T: Real>(r0: &Sym2<T>, g: &Sym2<T>) -> Result<TuvDecomposition<T>> {
    r0.dim().same(g.dim())?;
    let ginv = g.inverse()?;
    let tr = r0.trace_with(&ginv);
    let (norm2, sq) = norm2_and_square(r0, &ginv);
    if tr.abs() > T::lit(TRACEFREE_TOLERANCE) * norm2.sqrt().max(T::min_positive_value()) {
        return Err(Error::NotTracefree(tr.to_f64_lossy()));
    }
    let n = T::from_count(g.n());
    let one = T::one();
    let two = T::lit(2.0);
    let gg = kulkarni_nomizu(g, g)?;
    let u = gg.scale(-norm2 / (n * (n - one)));
    let v = kulkarni_nomizu(&sq, g)?
        .scale(-two / (n - two))
        .axpy(two * norm2 / (n * (n - two)), &gg)?;
    let x = kulkarni_nomizu(r0, r0)?;
    let t = x.sub(&u)?.sub(&v)?;
    Ok(TuvDecomposition { t, u, v })
}

/// Residuals of the norm identities for an orthonormal-frame `R̊`:
/// `|T|² + (n/2)|V|²` and `|R̊∧R̊|² + ((n-2)/2)|V|² - |U|²`, each minus
/// `8(n-2)/(n-1) |R̊|⁴`, relative to that value.
pub fn tuv_identity_residuals<T: Real>(r0: &Sym2<T>, d: &TuvDecomposition<T>) -> (T, T) {
    let n = T::from_count(r0.n());
    let two = T::lit(2.0);
    let r4 = r0.norm2() * r0.norm2();
    let target = T::lit(8.0) * (n - two) / (n - T::one()) * r4;
    let v2 = d.v.norm2();
    let first = d.t.norm2() + n / two * v2;
    let x2 = d.t.add(&d.u).and_then(|tu| tu.add(&d.v)).map(|x| x.norm2()).unwrap_or(T::nan());
    let middle = x2 + (n - two) / two * v2 - d.u.norm2();
    let scale = target.max(T::min_positive_value());
    ((first - target).abs() / scale, (middle - target).abs() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Dim;

    #[test]
    fn diagonal_example() {
        let d = Dim::new(4).unwrap();
        let g = Sym2::<f64>::identity(d);
        let r0 = Sym2::diagonal(d, &[1.0, -1.0, 0.0, 0.0]);
        let tuv = tuv_decompose(&r0, &g).unwrap();
        assert!((tuv.u.norm2() - 8.0 / 3.0).abs() < 1e-12);
        assert!((tuv.v.norm2() - 8.0).abs() < 1e-12);
        assert!((tuv.t.norm2() - 16.0 / 3.0).abs() < 1e-12);
        assert!(tuv.t.trace_residual_with(&g) < 1e-14);
        let (a, b) = tuv_identity_residuals(&r0, &tuv);
        assert!(a < 1e-14 && b < 1e-14);
    }

    #[test]
    fn rejects_trace() {
        let d = Dim::new(4).unwrap();
        let g = Sym2::<f64>::identity(d);
        assert!(matches!(tuv_decompose(&g, &g), Err(Error::NotTracefree(_))));
    }
}

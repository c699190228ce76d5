use super::alg4::Alg4;
use super::dim::Dim;
use super::sym2::Sym2;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Orthonormal coframe change `T̂_{a..} = T_{i..} E^i_a` built from the
/// Cholesky factor `g = L L^T`, `E = L^{-T}`.
#[derive(Clone, Debug)]
pub struct Frame<T> {
    dim: Dim,
    /// Row-major `e[i * n + a] = E^i_a`.
    e: Vec<T>,
}

impl<T: Real> Frame<T> {
    pub fn orthonormal(g: &Sym2<T>) -> Result<Self> {
        let n = g.n();
        let l = g.cholesky().ok_or(Error::SingularMetric(0))?;
        let mut linv = vec![T::zero(); n * n];
        for c in 0..n {
            for i in c..n {
                let mut s = if i == c { T::one() } else { T::zero() };
                for k in c..i {
                    s -= l[i * n + k] * linv[k * n + c];
                }
                linv[i * n + c] = s / l[i * n + i];
            }
        }
        // E^i_a = (L^{-1})_{a i}
        let mut e = vec![T::zero(); n * n];
        for i in 0..n {
            for a in 0..n {
                e[i * n + a] = linv[a * n + i];
            }
        }
        Ok(Frame { dim: g.dim(), e })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Transforms every slot of a dense rank-`rank` covariant tensor.
    pub fn apply(&self, values: &[T], rank: usize) -> Vec<T> {
        let n = self.dim.get();
        debug_assert_eq!(values.len(), n.pow(rank as u32));
        let mut cur = values.to_vec();
        let mut next = vec![T::zero(); cur.len()];
        for slot in 0..rank {
            let stride = n.pow((rank - 1 - slot) as u32);
            let outer = n.pow(slot as u32);
            for o in 0..outer {
                for a in 0..n {
                    for s in 0..stride {
                        let mut acc = T::zero();
                        for i in 0..n {
                            let ei = self.e[i * n + a];
                            if ei != T::zero() {
                                acc += cur[(o * n + i) * stride + s] * ei;
                            }
                        }
                        next[(o * n + a) * stride + s] = acc;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        cur
    }

    pub fn sym2(&self, s: &Sym2<T>) -> Sym2<T> {
        Sym2::from_dense(self.dim, &self.apply(&s.to_dense(), 2))
    }

    /// Frame components keep the declared flags; tracefreeness with respect
    /// to `g` becomes tracefreeness with respect to the identity.
    pub fn alg4(&self, t: &Alg4<T>) -> Alg4<T> {
        let v = self.apply(t.values(), 4);
        Alg4::from_values(self.dim, v)
            .expect("same length")
            .with_flags(t.flags(), t.residual())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_becomes_identity() {
        let d = Dim::new(4).unwrap();
        let g = Sym2::from_fn(d, |i, j| if i == j { 2.0 + i as f64 } else { 0.1 });
        let f = Frame::orthonormal(&g).unwrap();
        let id = f.sym2(&g);
        assert!((id - Sym2::identity(d)).max_abs() < 1e-14);
    }
}

use super::build::Factor;
use crate::error::Result;
use crate::scalar::Real;
use crate::tensor::{weyl_from_riemann, Alg4, Dim, Sym2, Symmetry, Tensor3};

/// Closed-form curvature of a diagonal product of round spheres and circles.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticOracle<T> {
    dim: Dim,
    factors: Vec<Factor<T>>,
}

fn sphere_volume(p: usize) -> f64 {
    // |S^0| = 2, |S^1| = 2π, |S^p| = 2π |S^{p-2}| / (p-1)
    match p {
        0 => 2.0,
        1 => std::f64::consts::TAU,
        _ => std::f64::consts::TAU * sphere_volume(p - 2) / (p - 1) as f64,
    }
}

impl<T: Real> AnalyticOracle<T> {
    pub fn new(dim: Dim, factors: Vec<Factor<T>>) -> Self {
        AnalyticOracle { dim, factors }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn factors(&self) -> &[Factor<T>] {
        &self.factors
    }

    /// Per axis: owning factor index and the curvature of that factor.
    fn blocks(&self) -> Vec<(usize, T)> {
        let mut v = Vec::new();
        for (b, f) in self.factors.iter().enumerate() {
            let k = match f {
                Factor::Sphere { p, r } if *p >= 2 => T::one() / (*r * *r),
                _ => T::zero(),
            };
            v.extend(std::iter::repeat_n((b, k), f.dim()));
        }
        v
    }

    /// Diagonal entries `g_aa` and their partials `∂_b g_aa` as `[a][b]`.
    fn diag(&self, x: &[T]) -> (Vec<T>, Vec<T>) {
        let n = self.dim.get();
        let mut g = vec![T::one(); n];
        let mut dg = vec![T::zero(); n * n];
        let mut off = 0;
        for f in &self.factors {
            match f {
                Factor::Sphere { p, r } => {
                    for i in 0..*p {
                        let a = off + i;
                        let mut v = *r * *r;
                        for b in 0..i {
                            let s = x[off + b].sin();
                            v *= s * s;
                        }
                        g[a] = v;
                        for b in 0..i {
                            let c = x[off + b];
                            // ∂_b (sin² c) / sin² c = 2 cot c
                            dg[a * n + off + b] = T::lit(2.0) * v * c.cos() / c.sin();
                        }
                    }
                }
                Factor::Line { .. } => {}
            }
            off += f.dim();
        }
        (g, dg)
    }

    pub fn metric(&self, x: &[T]) -> Sym2<T> {
        let (g, _) = self.diag(x);
        Sym2::diagonal(self.dim, &g)
    }

    /// `Γ^a_bc` as `[a][b][c]`.
    pub fn christoffel(&self, x: &[T]) -> Vec<T> {
        let n = self.dim.get();
        let (g, dg) = self.diag(x);
        let half = T::lit(0.5);
        let mut out = vec![T::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                // Γ^a_ab = Γ^a_ba = ∂_b g_aa / (2 g_aa)
                let v = half * dg[a * n + b] / g[a];
                out[(a * n + a) * n + b] = v;
                out[(a * n + b) * n + a] = v;
            }
            for b in 0..n {
                if b != a {
                    // Γ^a_bb = -∂_a g_bb / (2 g_aa)
                    out[(a * n + b) * n + b] = -half * dg[b * n + a] / g[a];
                }
            }
        }
        out
    }

    pub fn riemann(&self, x: &[T]) -> Alg4<T> {
        let (g, _) = self.diag(x);
        let blocks = self.blocks();
        Alg4::from_fn(self.dim, |i, j, k, l| {
            let b = blocks[i].0;
            if blocks[j].0 != b || blocks[k].0 != b || blocks[l].0 != b {
                return T::zero();
            }
            let d = |a: usize, c: usize| if a == c { g[a] } else { T::zero() };
            blocks[i].1 * (d(i, k) * d(j, l) - d(i, l) * d(j, k))
        })
        .project(Symmetry::RIEMANN)
    }

    pub fn ricci(&self, x: &[T]) -> Sym2<T> {
        let (g, _) = self.diag(x);
        let blocks = self.blocks();
        let sizes: Vec<usize> = self.factors.iter().map(|f| f.dim()).collect();
        let d: Vec<T> = (0..self.dim.get())
            .map(|a| {
                let (b, k) = blocks[a];
                k * T::from_count(sizes[b] - 1) * g[a]
            })
            .collect();
        Sym2::diagonal(self.dim, &d)
    }

    pub fn scalar(&self) -> T {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Sphere { p, r } if *p >= 2 => T::from_count(p * (p - 1)) / (*r * *r),
                _ => T::zero(),
            })
            .sum()
    }

    pub fn ricci0(&self, x: &[T]) -> Sym2<T> {
        self.ricci(x) - self.metric(x) * (self.scalar() / T::from_count(self.dim.get()))
    }

    pub fn weyl(&self, x: &[T]) -> Result<Alg4<T>> {
        weyl_from_riemann(&self.riemann(x), &self.ricci(x), self.scalar(), &self.metric(x))
    }

    /// Every factor has parallel curvature, so the Cotton tensor vanishes.
    pub fn cotton(&self) -> Tensor3<T> {
        Tensor3::zeros(self.dim)
    }

    /// `W_ikjl R^kl / (n-2)`; the divergence term vanishes with the Cotton tensor.
    pub fn bach(&self, x: &[T]) -> Result<Sym2<T>> {
        let w = self.weyl(x)?;
        let g = self.metric(x);
        let ginv = g.inverse()?;
        let ric = self.ricci(x);
        let n = self.dim.get();
        let up = Sym2::from_fn(self.dim, |k, l| ric.get(k, l) * ginv.get(k, k) * ginv.get(l, l));
        let c = T::one() / T::from_count(n - 2);
        Ok(w.contract_sym2(&up) * c)
    }

    pub fn volume(&self) -> T {
        self.factors.iter().fold(T::one(), |v, f| match f {
            Factor::Sphere { p, r } => v * r.powi(*p as i32) * T::lit(sphere_volume(*p)),
            Factor::Line { length } => v * *length,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Sphere { p, .. } => 1 + if p % 2 == 0 { 1 } else { -1 },
                Factor::Line { .. } => 0,
            })
            .product()
    }

    /// Known Yamabe invariant: only for a single round sphere, where the
    /// constant function attains it.
    pub fn exact_yamabe(&self) -> Option<T> {
        match self.factors.as_slice() {
            [Factor::Sphere { p, .. }] if *p == self.dim.get() => {
                let n = *p;
                let vol = T::lit(sphere_volume(n));
                Some(T::from_count(n * (n - 1)) * vol.powf(T::lit(2.0) / T::from_count(n)))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_sphere_volumes() {
        assert!((sphere_volume(2) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((sphere_volume(4) - 8.0 * pi2 / 3.0).abs() < 1e-12);
        assert!((sphere_volume(3) - 2.0 * pi2).abs() < 1e-12);
    }
}

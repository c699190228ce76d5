use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::alg4::{Alg4, Symmetry};
use super::dim::Dim;
use super::sym2::Sym2;
use crate::scalar::Real;

/// Independent stream `index` of the generator seeded with `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let x: f64 = rng.sample(StandardNormal);
    T::lit(x)
}

pub fn random_sym2<T: Real, R: Rng + ?Sized>(dim: Dim, rng: &mut R) -> Sym2<T> {
    Sym2::from_fn(dim, |_, _| gaussian(rng))
}

/// Unit-norm tracefree symmetric 2-tensor (orthonormal frame).
pub fn random_tracefree_unit<T: Real, R: Rng + ?Sized>(dim: Dim, rng: &mut R) -> Sym2<T> {
    loop {
        let a: Sym2<T> = random_sym2(dim, rng);
        let a = a - Sym2::identity(dim) * (a.trace() / T::from_count(dim.get()));
        let nrm = a.norm();
        if nrm > T::lit(1e-6) {
            return a * (T::one() / nrm);
        }
    }
}

/// Random algebraic curvature tensor from a Gaussian array.
pub fn random_curvature<T: Real, R: Rng + ?Sized>(dim: Dim, rng: &mut R) -> Alg4<T> {
    let v = (0..dim.get().pow(4)).map(|_| gaussian(rng)).collect();
    Alg4::with_symmetry(dim, v, Symmetry::RIEMANN).expect("length n^4")
}

/// Unit-norm Weyl-type tensor (orthonormal frame).
pub fn random_weyl_unit<T: Real, R: Rng + ?Sized>(dim: Dim, rng: &mut R) -> Alg4<T> {
    loop {
        let v = (0..dim.get().pow(4)).map(|_| gaussian(rng)).collect();
        let w = Alg4::with_symmetry(dim, v, Symmetry::WEYL).expect("length n^4");
        let nrm = w.norm();
        if nrm > T::lit(1e-6) {
            return w.scale(T::one() / nrm);
        }
    }
}

use super::report::EstimateReport;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{kulkarni_nomizu, Alg4, Frame, Sym2, Symmetry};

fn require_four(n: usize) -> Result<()> {
    if n != 4 {
        return Err(Error::Precondition(format!("pointwise pinching is defined for n = 4, got {n}")));
    }
    Ok(())
}

/// `|W + (√2/3) R̊∧g| < 2R/(3√3)` at a point; `W`, `R̊` are covariant
/// components with respect to `g`.
pub fn pointwise_pinching<T: Real>(
    w: &Alg4<T>,
    r0: &Sym2<T>,
    r: T,
    g: &Sym2<T>,
    margin: T,
) -> Result<EstimateReport<T>> {
    require_four(w.n())?;
    w.dim().same(r0.dim())?.same(g.dim())?;
    w.require(Symmetry::WEYL)?;
    if !(r > T::zero()) {
        return Err(Error::Precondition("scalar curvature must be positive".into()));
    }
    let frame = Frame::orthonormal(g)?;
    let (w, r0) = (frame.alg4(w), frame.sym2(r0));
    let id = Sym2::identity(w.dim());
    let x = w.axpy(T::lit(2.0).sqrt() / T::lit(3.0), &kulkarni_nomizu(&r0, &id)?)?;
    let rhs = T::lit(2.0) * r / (T::lit(3.0) * T::lit(3.0).sqrt());
    Ok(EstimateReport::below(x.norm(), rhs, margin))
}

/// The conditions compared against the pointwise pinching in dimension four.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchingChainReport<T> {
    /// `|W| + |R̊| < R/16`
    pub weak_pinching: EstimateReport<T>,
    /// `|W|² + |R̊|² <= |W|² + (16/9)|R̊|²`
    pub norm_chain: EstimateReport<T>,
    /// `|W|² + (16/9)|R̊|² < 4R²/27`
    pub chain_bound: EstimateReport<T>,
    /// `|W| + |R̊| <= √(2(|W|² + |R̊|²))`
    pub cauchy_schwarz: EstimateReport<T>,
    /// `|W| + |R̊| < 4R/(3√6)`
    pub sum_bound: EstimateReport<T>,
    /// `R/16 < 4R/(3√6)` as constants.
    pub constants: EstimateReport<T>,
}

impl<T: Real> PinchingChainReport<T> {
    pub fn all(&self) -> bool {
        [&self.weak_pinching, &self.norm_chain, &self.chain_bound, &self.cauchy_schwarz, &self.sum_bound, &self.constants]
            .iter()
            .all(|r| r.satisfied)
    }
}

/// Orthonormal-frame `W`, `R̊` and scalar curvature `R`.
pub fn pinching_chain<T: Real>(w: &Alg4<T>, r0: &Sym2<T>, r: T, margin: T) -> Result<PinchingChainReport<T>> {
    require_four(w.n())?;
    w.dim().same(r0.dim())?;
    let (a2, b2) = (w.norm2(), r0.norm2());
    let (a, b) = (a2.sqrt(), b2.sqrt());
    let three = T::lit(3.0);
    let c_sum = T::lit(4.0) / (three * T::lit(6.0).sqrt());
    let c_weak = T::one() / T::lit(16.0);
    let tol = T::lit(1e-14) * (a2 + b2).max(T::min_positive_value());
    Ok(PinchingChainReport {
        weak_pinching: EstimateReport::below(a + b, c_weak * r, margin),
        norm_chain: EstimateReport::at_most(a2 + b2, a2 + T::lit(16.0) / T::lit(9.0) * b2, tol),
        chain_bound: EstimateReport::below(a2 + T::lit(16.0) / T::lit(9.0) * b2, T::lit(4.0) * r * r / T::lit(27.0), margin),
        cauchy_schwarz: EstimateReport::at_most(a + b, (T::lit(2.0) * (a2 + b2)).sqrt(), tol.sqrt()),
        sum_bound: EstimateReport::below(a + b, c_sum * r, margin),
        constants: EstimateReport::below(c_weak, c_sum, T::zero()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Dim;

    #[test]
    fn round_sphere_values() {
        let d = Dim::new(4).unwrap();
        let g = Sym2::<f64>::identity(d);
        let rep = pointwise_pinching(&Alg4::zeros(d), &Sym2::zeros(d), 12.0, &g, 0.0).unwrap();
        assert_eq!(rep.lhs, 0.0);
        assert!((rep.rhs - 8.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(rep.satisfied);
        let chain = pinching_chain(&Alg4::zeros(d), &Sym2::zeros(d), 12.0, 0.0).unwrap();
        assert!(chain.all());
        assert!((4.0 / (3.0 * 6f64.sqrt()) - 0.5443).abs() < 1e-4);
    }

    #[test]
    fn boundary_is_strict() {
        let d = Dim::new(4).unwrap();
        let g = Sym2::<f64>::identity(d);
        let w = Alg4::with_symmetry(d, (0..256).map(|i| ((i * 37) % 11) as f64 - 5.0).collect(), Symmetry::WEYL).unwrap();
        let r = 1.5;
        let target = 2.0 * r / (3.0 * 3f64.sqrt());
        let w = w.scale(target / w.norm());
        let rep = pointwise_pinching(&w, &Sym2::zeros(d), r, &g, 0.0).unwrap();
        assert!(rep.slack.abs() < 1e-14);
        let w = w.scale(1.0 + 1e-12);
        assert!(!pointwise_pinching(&w, &Sym2::zeros(d), r, &g, 0.0).unwrap().satisfied);
    }

    #[test]
    fn wrong_dimension() {
        let d = Dim::new(5).unwrap();
        let g = Sym2::<f64>::identity(d);
        assert!(pointwise_pinching(&Alg4::zeros(d), &Sym2::zeros(d), 1.0, &g, 0.0).is_err());
        assert!(pinching_chain(&Alg4::<f64>::zeros(d), &Sym2::zeros(d), 1.0, 0.0).is_err());
    }
}

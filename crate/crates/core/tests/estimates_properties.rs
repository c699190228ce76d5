use curvkit::estimates::*;
use curvkit::tensor::sampling::{gaussian, random_tracefree_unit, random_weyl_unit, rng_for};
use curvkit::tensor::{kulkarni_nomizu, Alg4, Dim, Sym2};
use proptest::prelude::*;

fn dim_and_seed(lo: usize, hi: usize) -> impl Strategy<Value = (Dim, u64)> {
    (lo..=hi, any::<u64>()).prop_map(|(n, s)| (Dim::new(n).unwrap(), s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sharp_estimate_holds((dim, seed) in dim_and_seed(4, 8), index in any::<u64>()) {
        let s = random_sample::<f64>(dim, seed, index);
        let rep = sharp_estimate(&s).unwrap();
        prop_assert!(rep.slack >= -1e-12 * rep.rhs, "{:?}", rep);
        prop_assert!(combined_norm_residual(&s).unwrap() < 1e-12);
    }

    #[test]
    fn tuv_structure((dim, seed) in dim_and_seed(4, 8), lambda in 0.1f64..10.0) {
        let mut rng = rng_for(seed, 0);
        let r0: Sym2<f64> = random_tracefree_unit(dim, &mut rng) * gaussian::<f64, _>(&mut rng).exp();
        let g = Sym2::identity(dim);
        let d = tuv_decompose(&r0, &g).unwrap();
        let x = kulkarni_nomizu(&r0, &r0).unwrap();
        let sum = d.t.add(&d.u).unwrap().add(&d.v).unwrap();
        let scale = x.max_abs().max(1e-300);
        prop_assert!(sum.sub(&x).unwrap().max_abs() < 1e-13 * scale);
        prop_assert!(d.t.trace_residual_with(&g) < 1e-12 * scale);
        let (a, b) = tuv_identity_residuals(&r0, &d);
        prop_assert!(a < 1e-12 && b < 1e-12, "{} {}", a, b);
        let ds = tuv_decompose(&(r0 * lambda), &g).unwrap();
        let l2 = lambda * lambda;
        prop_assert!(ds.t.sub(&d.t.scale(l2)).unwrap().max_abs() < 1e-12 * l2 * scale);
        prop_assert!(ds.v.sub(&d.v.scale(l2)).unwrap().max_abs() < 1e-12 * l2 * scale);
    }

    #[test]
    fn cubic_bound_both_signs((dim, seed) in dim_and_seed(4, 8), scale in 0.01f64..100.0) {
        let mut rng = rng_for(seed, 1);
        let w: Alg4<f64> = random_weyl_unit(dim, &mut rng).scale(scale);
        let plus = cubic_bound_check(&w).unwrap();
        let minus = cubic_bound_check(&w.scale(-1.0)).unwrap();
        prop_assert!(plus.satisfied && minus.satisfied);
        prop_assert!(plus.lhs.max(minus.lhs) >= 0.0);
        prop_assert_eq!(plus.rhs, minus.rhs);
    }

    #[test]
    fn theta_coefficient_lower_bound(theta in -1e3f64..1e3) {
        prop_assume!((theta - 1.0).abs() > 1e-9);
        let f = theta_coefficient(theta).unwrap();
        prop_assert!(f >= 0.75 - 1e-15);
        if (theta + 1.0).abs() > 1e-3 {
            prop_assert!(f > 0.75);
        }
    }

    #[test]
    fn pointwise_pinching_is_scale_invariant(seed in any::<u64>(), c in 0.2f64..5.0) {
        let dim = Dim::new(4).unwrap();
        let mut rng = rng_for(seed, 2);
        let w: Alg4<f64> = random_weyl_unit(dim, &mut rng).scale(gaussian::<f64, _>(&mut rng).abs());
        let r0: Sym2<f64> = random_tracefree_unit(dim, &mut rng) * gaussian::<f64, _>(&mut rng).abs();
        let r = 1.0 + 3.0 * gaussian::<f64, _>(&mut rng).abs();
        let g = Sym2::identity(dim);
        let base = pointwise_pinching(&w, &r0, r, &g, 0.0).unwrap();
        // g -> c²g: W_ijkl scales by c², R̊_ij is invariant, R by c⁻².
        let c2 = c * c;
        let scaled = pointwise_pinching(&w.scale(c2), &r0, r / c2, &(g * c2), 0.0).unwrap();
        prop_assert_eq!(base.satisfied, scaled.satisfied);
        prop_assert!((scaled.lhs * c2 - base.lhs).abs() < 1e-12 * (1.0 + base.lhs));
    }

    #[test]
    fn pointwise_pinching_implies_chain(seed in any::<u64>()) {
        let dim = Dim::new(4).unwrap();
        let mut rng = rng_for(seed, 3);
        let w: Alg4<f64> = random_weyl_unit(dim, &mut rng).scale(gaussian::<f64, _>(&mut rng).abs());
        let r0: Sym2<f64> = random_tracefree_unit(dim, &mut rng) * gaussian::<f64, _>(&mut rng).abs();
        let r = 0.5 + 10.0 * gaussian::<f64, _>(&mut rng).abs();
        let pinch = pointwise_pinching(&w, &r0, r, &Sym2::identity(dim), 0.0).unwrap();
        let chain = pinching_chain(&w, &r0, r, 0.0).unwrap();
        prop_assert!(chain.norm_chain.satisfied && chain.cauchy_schwarz.satisfied && chain.constants.satisfied);
        if pinch.satisfied {
            prop_assert!(chain.chain_bound.satisfied && chain.sum_bound.satisfied);
        }
        if chain.weak_pinching.satisfied {
            prop_assert!(chain.sum_bound.satisfied);
        }
    }
}

#[test]
fn product_spheres_violate_pointwise_pinching() {
    let d = Dim::new(4).unwrap();
    let g = Sym2::<f64>::identity(d);
    // S²(1)×S²(1) in an orthonormal frame: block sectional curvature 1.
    let h1 = Sym2::diagonal(d, &[1.0, 1.0, 0.0, 0.0]);
    let h2 = Sym2::diagonal(d, &[0.0, 0.0, 1.0, 1.0]);
    let riem = kulkarni_nomizu(&h1, &h1).unwrap().scale(0.5).add(&kulkarni_nomizu(&h2, &h2).unwrap().scale(0.5)).unwrap();
    let riem = Alg4::with_symmetry(d, riem.into_values(), curvkit::tensor::Symmetry::RIEMANN).unwrap();
    let w = curvkit::tensor::weyl_from_riemann(&riem, &g, 4.0, &g).unwrap();
    let rep = pointwise_pinching(&w, &Sym2::zeros(d), 4.0, &g, 0.0).unwrap();
    assert!((rep.lhs * rep.lhs - 16.0 / 3.0).abs() < 1e-12);
    assert!((rep.rhs - 8.0 / (3.0 * 3f64.sqrt())).abs() < 1e-12);
    assert!(!rep.satisfied);
}

#[test]
fn batch_is_deterministic_and_clean() {
    for n in 4..=6 {
        let d = Dim::new(n).unwrap();
        let a = sample_sharp::<f64>(d, 3000, 42).unwrap();
        let b = sample_sharp::<f64>(d, 3000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
        assert!(a.max_identity_residual < 1e-12);
    }
    let c = sample_cubic::<f64>(Dim::new(4).unwrap(), 3000, 5).unwrap();
    assert_eq!(c.violations, 0);
    assert!(c.max_ratio <= 6f64.sqrt() / 4.0);
}

#[test]
fn zero_weyl_cubic_is_equality() {
    let rep = cubic_bound_check(&Alg4::<f64>::zeros(Dim::new(5).unwrap())).unwrap();
    assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
    assert!(rep.satisfied);
}

#[test]
fn theta_far_field() {
    for t in [1e6f64, -1e6] {
        assert!((theta_coefficient(t).unwrap() - 1.0).abs() < 1e-5);
    }
    assert!(matches!(theta_coefficient(1.0f64), Err(curvkit::Error::ThetaSingular)));
    let (t, v) = theta_minimize::<f64>();
    assert!((t + 1.0).abs() < 1e-6 && (v - 0.75).abs() < 1e-10);
}

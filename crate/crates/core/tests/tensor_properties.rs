use curvkit::tensor::sampling::{gaussian, random_curvature, random_sym2, random_tracefree_unit, random_weyl_unit, rng_for};
use curvkit::tensor::{cubic_weyl_form, kulkarni_nomizu, tracefree_project, weyl_from_riemann, Alg4, Dim, Sym2, Symmetry};
use proptest::prelude::*;

fn dim_and_seed() -> impl Strategy<Value = (Dim, u64)> {
    (4usize..=8, any::<u64>()).prop_map(|(n, s)| (Dim::new(n).unwrap(), s))
}

fn random_spd(dim: Dim, seed: u64) -> Sym2<f64> {
    let mut rng = rng_for(seed, 99);
    let a: Sym2<f64> = random_sym2(dim, &mut rng);
    let n = dim.get();
    Sym2::from_fn(dim, |i, j| {
        let aat: f64 = (0..n).map(|k| a.get(i, k) * a.get(j, k)).sum();
        0.2 * aat + if i == j { 1.0 } else { 0.0 }
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kn_is_symmetric_in_its_arguments((dim, seed) in dim_and_seed()) {
        let mut rng = rng_for(seed, 0);
        let a: Sym2<f64> = random_sym2(dim, &mut rng);
        let b: Sym2<f64> = random_sym2(dim, &mut rng);
        let ab = kulkarni_nomizu(&a, &b).unwrap();
        let ba = kulkarni_nomizu(&b, &a).unwrap();
        prop_assert_eq!(ab.values(), ba.values());
        prop_assert_eq!(ab.violation(Symmetry::RIEMANN), 0.0);
    }

    #[test]
    fn kn_square_norm((dim, seed) in dim_and_seed()) {
        let mut rng = rng_for(seed, 1);
        let r0: Sym2<f64> = random_tracefree_unit(dim, &mut rng) * gaussian::<f64, _>(&mut rng).exp();
        let lhs = kulkarni_nomizu(&r0, &r0).unwrap().norm2();
        let rhs = 8.0 * r0.norm2().powi(2) - 8.0 * r0.square().norm2();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn weyl_of_random_curvature_is_weyl((dim, seed) in dim_and_seed()) {
        let mut rng = rng_for(seed, 2);
        let g = random_spd(dim, seed);
        let ginv = g.inverse().unwrap();
        let riem: Alg4<f64> = random_curvature(dim, &mut rng);
        let ric = riem.ricci_contraction_with(&ginv);
        let r = ric.trace_with(&ginv);
        let w = weyl_from_riemann(&riem, &ric, r, &g).unwrap();
        let scale = w.norm().max(1e-300);
        for flag in [Symmetry::ANTISYM12, Symmetry::ANTISYM34, Symmetry::PAIR, Symmetry::BIANCHI] {
            prop_assert!(w.violation(flag) < 1e-12 * scale);
        }
        prop_assert!(w.trace_residual_with(&ginv) < 1e-10 * scale);
    }

    #[test]
    fn cubic_form_is_homogeneous((dim, seed) in dim_and_seed(), lambda in -3.0f64..3.0) {
        let mut rng = rng_for(seed, 3);
        let w: Alg4<f64> = random_weyl_unit(dim, &mut rng);
        let a = cubic_weyl_form(&w.scale(lambda)).unwrap();
        let b = lambda.powi(3) * cubic_weyl_form(&w).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
    }

    #[test]
    fn tracefree_projection_is_tracefree((dim, seed) in dim_and_seed()) {
        let mut rng = rng_for(seed, 4);
        let g = random_spd(dim, seed);
        let a: Sym2<f64> = random_sym2(dim, &mut rng);
        let p = tracefree_project(&a, &g).unwrap();
        let ginv = g.inverse().unwrap();
        prop_assert!(p.trace_with(&ginv).abs() < 1e-12 * (1.0 + a.norm()));
        let pp = tracefree_project(&p, &g).unwrap();
        prop_assert!((pp - p).max_abs() < 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn declared_flags_hold_after_projection((dim, seed) in dim_and_seed()) {
        let mut rng = rng_for(seed, 5);
        let v: Vec<f64> = (0..dim.get().pow(4)).map(|_| gaussian(&mut rng)).collect();
        let w = Alg4::with_symmetry(dim, v, Symmetry::WEYL).unwrap();
        let scale = w.norm().max(1e-300);
        prop_assert!(w.violation(Symmetry::WEYL) < 1e-12 * scale);
        prop_assert!(w.require(Symmetry::WEYL).is_ok());
    }
}

#[test]
fn metric_kn_norm_all_dimensions() {
    for n in 4..=8 {
        let g = Sym2::<f64>::identity(Dim::new(n).unwrap());
        let gg = kulkarni_nomizu(&g, &g).unwrap();
        assert_eq!(gg.norm2(), 8.0 * (n * (n - 1)) as f64);
    }
}

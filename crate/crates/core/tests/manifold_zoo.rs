use curvkit::chart::{curvature_bundle, BundleOptions, Retain};
use curvkit::tensor::{Dim, Frame, Sym2};
use curvkit::zoo::*;
use curvkit::Error;
use proptest::prelude::*;

fn oracle(spec: &GeometrySpec<f64>) -> AnalyticOracle<f64> {
    AnalyticOracle::new(spec.dim().unwrap(), factors(&spec.kind))
}

/// Christoffel symbols by central differences of the oracle metric.
fn fd_christoffel(o: &AnalyticOracle<f64>, x: &[f64]) -> Vec<f64> {
    let n = o.dim().get();
    let h = 1e-5;
    let mut dg = vec![0.0; n * n * n];
    for k in 0..n {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[k] += h;
        xm[k] -= h;
        let (gp, gm) = (o.metric(&xp), o.metric(&xm));
        for i in 0..n {
            for j in 0..n {
                dg[(k * n + i) * n + j] = (gp.get(i, j) - gm.get(i, j)) / (2.0 * h);
            }
        }
    }
    let ginv = o.metric(x).inverse().unwrap();
    let mut out = vec![0.0; n * n * n];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                out[(m * n + i) * n + j] = (0..n)
                    .map(|q| ginv.get(m, q) * (dg[(i * n + q) * n + j] + dg[(j * n + q) * n + i] - dg[(q * n + i) * n + j]))
                    .sum::<f64>()
                    / 2.0;
            }
        }
    }
    out
}

fn coords() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.3f64..2.8, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn oracle_christoffel_matches_metric(x in coords(), r in 0.5f64..2.0) {
        for spec in [
            GeometrySpec::round_sphere(4, r, vec![8; 4]),
            GeometrySpec::round_sphere(5, r, vec![8; 5]),
            GeometrySpec::product_spheres(2, 3, r, 1.0, vec![8; 5]),
            GeometrySpec::product_spheres(3, 3, 1.0, r, vec![8; 6]),
        ] {
            let o = oracle(&spec);
            let x = &x[..o.dim().get()];
            let fd = fd_christoffel(&o, x);
            for (a, b) in o.christoffel(x).iter().zip(&fd) {
                prop_assert!((a - b).abs() < 1e-7, "{} {}", a, b);
            }
        }
    }

    #[test]
    fn oracle_contractions_agree(x in coords(), r1 in 0.5f64..2.0, r2 in 0.5f64..2.0) {
        for spec in [
            GeometrySpec::round_sphere(6, r1, vec![8; 6]),
            GeometrySpec::product_spheres(2, 2, r1, r2, vec![8; 4]),
            GeometrySpec::product_spheres(4, 3, r1, r2, vec![8; 7]),
        ] {
            let o = oracle(&spec);
            let n = o.dim().get();
            let x = &x[..n];
            let g = o.metric(x);
            let ginv = g.inverse().unwrap();
            let ric = o.riemann(x).ricci_contraction_with(&ginv);
            prop_assert!((ric - o.ricci(x)).max_abs() < 1e-12);
            prop_assert!((ric.trace_with(&ginv) - o.scalar()).abs() < 1e-12 * o.scalar());
            let w = o.weyl(x).unwrap();
            prop_assert!(w.trace_residual_with(&ginv) < 1e-12);
            // Weyl norm in an orthonormal frame depends only on the radii.
            let wn = Frame::orthonormal(&g).unwrap().alg4(&w).norm2();
            let wn0 = Frame::orthonormal(&o.metric(&vec![1.0; n])).unwrap().alg4(&o.weyl(&vec![1.0; n]).unwrap()).norm2();
            prop_assert!((wn - wn0).abs() < 1e-10 * (1.0 + wn0));
        }
    }
}

#[test]
fn round_spheres_are_conformally_flat_einstein() {
    for n in 4..=8 {
        let o = oracle(&GeometrySpec::round_sphere(n, 2.0, vec![8; n]));
        let x = vec![1.1; n];
        assert!(o.weyl(&x).unwrap().max_abs() < 1e-12);
        assert!(o.ricci0(&x).max_abs() < 1e-12);
        assert!((o.scalar() - (n * (n - 1)) as f64 / 4.0).abs() < 1e-12);
        assert_eq!(o.euler_characteristic(), if n % 2 == 0 { 2 } else { 0 });
        assert!(o.bach(&x).unwrap().max_abs() < 1e-12);
    }
}

#[test]
fn unit_product_spheres() {
    let o = oracle(&GeometrySpec::product_spheres(2, 2, 1.0, 1.0, vec![8; 4]));
    let x = [0.7, 2.0, 1.3, 5.0];
    let g = o.metric(&x);
    assert!((o.ricci(&x) - g).max_abs() < 1e-15);
    assert_eq!(o.scalar(), 4.0);
    assert_eq!(o.euler_characteristic(), 4);
    assert!((o.volume() - 16.0 * std::f64::consts::PI.powi(2)).abs() < 1e-10);
    assert!(o.exact_yamabe().is_none());
    let wn = Frame::orthonormal(&g).unwrap().alg4(&o.weyl(&x).unwrap()).norm2();
    assert!((wn - 16.0 / 3.0).abs() < 1e-12);
    assert!(o.bach(&x).unwrap().max_abs() < 1e-12);
}

#[test]
fn sphere_yamabe_and_volume() {
    let o = oracle(&GeometrySpec::round_sphere(4, 3.0, vec![8; 4]));
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((o.volume() - 81.0 * 8.0 * pi2 / 3.0).abs() < 1e-9);
    let y = o.exact_yamabe().unwrap();
    assert!((y - 12.0 * (8.0 * pi2 / 3.0).sqrt()).abs() < 1e-12);
}

#[test]
fn zero_amplitude_perturbation_is_flat_torus() {
    let flat = build(&GeometrySpec::<f64>::flat_torus(4, 8)).unwrap();
    let pert = build(&GeometrySpec::<f64>::perturbed_torus(4, 0.0, 3, 5, 8)).unwrap();
    assert_eq!(flat.metric.g().data(), pert.metric.g().data());
    assert!(pert.oracle.is_none());
    let b = curvature_bundle(&pert.metric, BundleOptions::default()).unwrap();
    assert!(matches!(oracle_compare(&pert.metric, &b, pert.oracle.as_ref()), Err(Error::MissingOracle)));
}

#[test]
fn perturbation_modes_are_seeded() {
    let d = Dim::new(4).unwrap();
    let a = perturbation_modes::<f64>(d, 9, 4);
    assert_eq!(a, perturbation_modes::<f64>(d, 9, 4));
    assert_ne!(a, perturbation_modes::<f64>(d, 10, 4));
    assert!(a.iter().all(|m| m.wave.iter().any(|&k| k != 0)));
    let x = [0.3, 1.0, 2.0, 4.0];
    let g = perturbed_metric(d, 0.05, &a, &x);
    assert!((g - Sym2::identity(d)).max_abs() <= 0.05 * 4.0);
}

#[test]
fn invalid_specs_are_rejected() {
    let bad = [
        GeometrySpec::round_sphere(3, 1.0, vec![8; 3]),
        GeometrySpec::round_sphere(4, -1.0, vec![8; 4]),
        GeometrySpec::round_sphere(4, 1.0, vec![8; 3]),
        GeometrySpec::product_spheres(0, 4, 1.0, 1.0, vec![8; 4]),
        GeometrySpec::round_sphere(4, 1.0, vec![8; 4]).with_excision(2.0),
        GeometrySpec::perturbed_torus(4, f64::NAN, 1, 1, 8),
    ];
    for s in bad {
        assert!(build(&s).is_err(), "{s:?}");
    }
    assert!(build(&GeometrySpec::<f64>::round_sphere(4, 1.0, vec![4; 4])).is_err());
    let huge = build(&GeometrySpec::<f64>::perturbed_torus(4, 5.0, 1, 6, 8));
    assert!(matches!(huge, Err(Error::InvalidGeometry(_))));
}

#[test]
fn resolution_change_keeps_excision() {
    let s = GeometrySpec::<f64>::round_sphere(4, 1.0, vec![12, 12, 12, 8]);
    let angle = s.excision_angle();
    assert!((angle - 3.0 * std::f64::consts::PI / 12.0).abs() < 1e-15);
    assert_eq!(s.with_resolution(vec![24, 24, 24, 8]).excision_angle(), angle);
}

#[test]
fn torus_has_no_excision_across_resolutions() {
    let s = GeometrySpec::<f64>::perturbed_torus(4, 0.05, 7, 3, 8);
    assert_eq!(s.excision_angle(), 0.0);
    let fine = s.with_resolution(vec![16; 4]);
    assert!(fine.validate().is_ok());
    assert!(build(&fine).is_ok());
}

#[test]
fn flat_torus_meets_every_structural_hypothesis() {
    let g = build(&GeometrySpec::<f64>::flat_torus(4, 8)).unwrap();
    let b = curvature_bundle(&g.metric, BundleOptions { order: 4, retain: Retain::Full }).unwrap();
    let h = curvkit::integral::Hypotheses::measure(&g.metric, &b);
    let tol = curvkit::integral::HypothesisTolerances::default();
    assert!(h.is_einstein(&tol) && h.is_harmonic(&tol) && h.is_bach_flat(&tol), "{h:?}");
}

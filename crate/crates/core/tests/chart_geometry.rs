use std::sync::OnceLock;

use curvkit::chart::*;
use curvkit::integral::trig_sym2_field;
use curvkit::zoo::*;
use proptest::prelude::*;

struct Torus {
    metric: MetricField<f64>,
    bundle: CurvatureBundle<f64>,
    phi: Field<f64>,
}

fn torus() -> &'static Torus {
    static T: OnceLock<Torus> = OnceLock::new();
    T.get_or_init(|| {
        let geo = build(&GeometrySpec::<f64>::perturbed_torus(4, 0.05, 7, 3, 8)).unwrap();
        let bundle = curvature_bundle(&geo.metric, BundleOptions::default()).unwrap();
        let phi = trig_sym2_field(geo.metric.chart(), 11, 3, 0.3);
        Torus { metric: geo.metric, bundle, phi }
    })
}

fn max_abs(f: &Field<f64>) -> f64 {
    f.data().iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn flat_torus_has_no_curvature() {
    for order in [2, 4] {
        let geo = build(&GeometrySpec::<f64>::flat_torus(5, 8)).unwrap();
        let b = curvature_bundle(&geo.metric, BundleOptions { order, retain: Retain::Full }).unwrap();
        for f in [&b.gamma, &b.ric, &b.scalar, &b.cotton, &b.bach, b.weyl.as_ref().unwrap()] {
            assert!(max_abs(f) < 1e-13);
        }
    }
}

#[test]
fn laplacian_of_trig_function() {
    let geo = build(&GeometrySpec::<f64>::flat_torus(4, 24)).unwrap();
    let m = &geo.metric;
    let st = Stencil::new(4).unwrap();
    let gamma = christoffel(m, &st).unwrap();
    let f = Field::from_fn(m.chart(), 0, |p, o| {
        let x = m.chart().coords(p);
        o[0] = x[0].sin() * (2.0 * x[2]).cos();
    });
    let lap = laplacian(m, &gamma, &f, &st);
    let grad = gradient_norm2(m, &f, &st);
    // Symbol of the fourth-order first-derivative stencil at wavenumber k.
    let h = std::f64::consts::TAU / 24.0;
    let sym = |k: f64| (8.0 * (k * h).sin() - (2.0 * k * h).sin()) / (6.0 * h);
    let discrete = sym(1.0).powi(2) + sym(2.0).powi(2);
    assert!((discrete - 5.0).abs() < 0.02);
    for p in 0..m.chart().len() {
        assert!((lap.scalar(p) + discrete * f.scalar(p)).abs() < 1e-12);
        let x = m.chart().coords(p);
        let d0 = sym(1.0) * x[0].cos() * (2.0 * x[2]).cos();
        let d2 = sym(2.0) * x[0].sin() * (2.0 * x[2]).sin();
        assert!((grad.scalar(p) - d0 * d0 - d2 * d2).abs() < 1e-12);
    }
}

#[test]
fn sphere_matches_oracle_and_refines() {
    let mut reports = Vec::new();
    for k in [12, 16] {
        let geo = build(&GeometrySpec::<f64>::round_sphere(4, 1.0, vec![k, k, k, 8]).with_excision(0.6)).unwrap();
        let b = curvature_bundle(&geo.metric, BundleOptions::default()).unwrap();
        let rep = oracle_compare(&geo.metric, &b, geo.oracle.as_ref()).unwrap();
        assert!(rep.get("scalar").unwrap() < 0.1);
        assert!(rep.get("weyl").unwrap() < 1e-10);
        assert!(rep.get("cotton").unwrap() < 1e-10);
        reports.push(rep);
    }
    for c in convergence(&reports[0], &reports[1], 16.0 / 12.0) {
        if c.coarse > 1e-10 && ["christoffel", "riemann", "ricci", "scalar", "traceless-ricci"].contains(&c.field) {
            assert!(c.order > 2.0, "{c:?}");
        }
    }
}

#[test]
fn product_spheres_oracle() {
    let geo = build(&GeometrySpec::<f64>::product_spheres(2, 2, 1.0, 1.0, vec![16, 8, 16, 8]).with_excision(0.6)).unwrap();
    let b = curvature_bundle(&geo.metric, BundleOptions::default()).unwrap();
    let rep = oracle_compare(&geo.metric, &b, geo.oracle.as_ref()).unwrap();
    assert!(rep.get("scalar").unwrap() < 1e-2);
    assert!(rep.get("weyl").unwrap() < 1e-2);
    assert!(rep.get("bach").unwrap() < 1e-2);
    assert!(rep.get("cotton").unwrap() < 1e-2);
}

#[test]
fn bundle_consistency_residuals() {
    let t = torus();
    let r = t.bundle.residuals;
    let scale = max_abs(t.bundle.riem.as_ref().unwrap());
    assert!(scale > 1e-3);
    assert!(r.riemann_symmetry < 1e-12 * scale);
    assert!(r.weyl_trace < 1e-12 * scale);
    assert!(r.cotton_antisymmetry < 1e-12 * scale);
    let geo = build(&GeometrySpec::<f64>::perturbed_torus(4, 0.05, 7, 3, 12)).unwrap();
    let fine = curvature_bundle(&geo.metric, BundleOptions::default()).unwrap().residuals;
    // At least second order under 8 -> 12 refinement.
    let ratio = |c: f64, f: f64| c / f;
    assert!(ratio(r.bach_trace, fine.bach_trace) > 2.25, "{r:?} {fine:?}");
    assert!(ratio(r.bach_asymmetry, fine.bach_asymmetry) > 2.25, "{r:?} {fine:?}");
    assert!(ratio(r.div_weyl_cotton.unwrap(), fine.div_weyl_cotton.unwrap()) > 2.25, "{r:?} {fine:?}");
}

#[test]
fn bach_forms_agree() {
    let t = torus();
    let alt = bach_from_div_weyl(&t.metric, &t.bundle).unwrap();
    let diff = alt
        .data()
        .iter()
        .zip(t.bundle.bach.data())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(diff < 5e-2 * max_abs(&t.bundle.bach), "{diff}");
}

#[test]
fn lean_bundle_refuses_div_weyl_bach() {
    let geo = build(&GeometrySpec::<f64>::flat_torus(4, 8)).unwrap();
    let b = curvature_bundle(&geo.metric, BundleOptions { order: 2, retain: Retain::Lean }).unwrap();
    assert!(b.riem.is_none() && b.weyl.is_none());
    assert!(matches!(bach_from_div_weyl(&geo.metric, &b), Err(curvkit::Error::Precondition(_))));
}

#[test]
fn theta_one_on_ricci_is_cotton_up_to_scalar_gradient() {
    let t = torus();
    let st = Stencil::new(4).unwrap();
    let c1 = theta_tensor(&t.metric, &t.bundle.gamma, &t.bundle.ric, 1.0, &st).unwrap();
    let n = 4;
    let mut worst = 0.0f64;
    for p in 0..t.metric.chart().len() {
        let g = t.metric.g().at(p);
        let dr = t.bundle.grad_scalar.at(p);
        let cot = t.bundle.cotton.at(p);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let corr = (dr[i] * g[j * n + k] - dr[j] * g[i * n + k]) / 6.0;
                    let v = c1.c.at(p)[(i * n + j) * n + k] - corr - cot[(i * n + j) * n + k];
                    worst = worst.max(v.abs());
                }
            }
        }
    }
    assert!(worst < 1e-12 * max_abs(&t.bundle.cotton).max(1e-12), "{worst}");
}

#[test]
fn theta_tensor_on_parallel_ricci_vanishes() {
    let geo = build(&GeometrySpec::<f64>::round_sphere(4, 1.0, vec![12, 12, 12, 8]).with_excision(0.6)).unwrap();
    let b = curvature_bundle(&geo.metric, BundleOptions { order: 4, retain: Retain::Lean }).unwrap();
    let st = Stencil::new(4).unwrap();
    let c = theta_tensor(&geo.metric, &b.gamma, &b.ric, 1.0, &st).unwrap();
    let chart = geo.metric.chart();
    let worst = c.c.max_abs_where(|p| chart.is_retained(p));
    assert!(worst < 1e-1, "{worst}");
    let d = c.dphi.max_abs_where(|p| chart.is_retained(p));
    assert!(d < 1e-1, "{d}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn theta_tensor_defining_relation(theta in -5.0f64..5.0) {
        let t = torus();
        let st = Stencil::new(4).unwrap();
        let c = theta_tensor(&t.metric, &t.bundle.gamma, &t.phi, theta, &st).unwrap();
        let c0 = theta_tensor(&t.metric, &t.bundle.gamma, &t.phi, 0.0, &st).unwrap();
        let n = 4;
        let scale = max_abs(&c0.dphi);
        for p in (0..t.metric.chart().len()).step_by(97) {
            let d = c.dphi.at(p);
            let cc = c.c.at(p);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let ijk = (i * n + j) * n + k;
                        let jik = (j * n + i) * n + k;
                        // θ = 0 reproduces ∇φ, symmetric in its last two slots.
                        prop_assert_eq!(c0.c.at(p)[ijk], d[(i * n + k) * n + j]);
                        prop_assert!((d[ijk] - d[(i * n + k) * n + j]).abs() <= 1e-12 * scale);
                        let lhs = cc[ijk] + theta * cc[jik];
                        let rhs = (1.0 - theta * theta) * d[ijk];
                        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale * (1.0 + theta * theta));
                    }
                }
            }
        }
    }
}

#[test]
fn contracted_bianchi_converges() {
    let t = torus();
    let (coarse, scale) = t.bundle.bianchi_residual(&t.metric);
    assert!(scale > 1e-3 && coarse < 5e-2 * scale, "{coarse} {scale}");
    let geo = build(&GeometrySpec::<f64>::perturbed_torus(4, 0.05, 7, 3, 12)).unwrap();
    let b = curvature_bundle(&geo.metric, BundleOptions { order: 4, retain: Retain::Lean }).unwrap();
    let (fine, _) = b.bianchi_residual(&geo.metric);
    assert!(coarse / fine > 2.25, "{coarse} {fine}");
}

use num_complex::Complex64 as C;
use proptest::prelude::*;

use scherk_costa::param_algebra::{
    end_cubic_coefficients, eval_cubic, r0, solve_end_cubic, y_equation_residual, GeometricParams,
};
use scherk_costa::periods::{c1_from_end, c1_reciprocal_bounds, c1_reciprocal_over_r, residue_middle_end, residue_side_end};
use scherk_costa::quadrature::{integrate_adaptive, QuadratureConfig};
use scherk_costa::solver::linspace;
use scherk_costa::surface_mesh::{BoundaryTag, ScForms, SurfaceMesh};

const I: C = C::new(0.0, 1.0);

fn region() -> impl Strategy<Value = GeometricParams> {
    (-0.01f64..-1e-5, 0.0f64..4.0, 0.01f64..1.0).prop_map(|(s, e, f)| {
        let rho = s.asin();
        GeometricParams::from_cap_r(rho, 10f64.powf(e), f * r0(rho)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn end_roots_solve_the_cubic(p in region()) {
        let end = solve_end_cubic(&p).unwrap();
        let c = end_cubic_coefficients(&p);
        let scale = 1.0 + p.lambda * p.lambda * p.r * p.r;
        for z in end.roots() {
            prop_assert!(eval_cubic(&c, z).norm() < 1e-11 * scale);
        }
        prop_assert!(end.a > 0.0 && end.b < 0.0 && end.y > 0.0);
        prop_assert!(y_equation_residual(&p, end.y).abs() < 1e-12 * scale);
        prop_assert!(end.in_supported_region);
    }

    #[test]
    fn side_end_sits_where_the_gauss_map_has_modulus_r(p in region()) {
        // |P(x)| = r^2 |x + i lambda|^2 on the end cubic
        let end = solve_end_cubic(&p).unwrap();
        let x = end.x();
        let s = p.sin_rho();
        let px = -I * x * x * x - 2.0 * s * x * x + I * x;
        let m = x + I * p.lambda;
        prop_assert!((px.norm() / m.norm_sqr() - p.r * p.r).abs() < 1e-9 * p.r * p.r);
    }

    #[test]
    fn residues_balance_at_c1(p in region()) {
        let end = solve_end_cubic(&p).unwrap();
        let c1 = c1_from_end(&p, &end);
        prop_assume!(c1 > 0.0);
        let mid = residue_middle_end(&p, &end, c1.sqrt());
        let side = residue_side_end(&p, &end, c1.sqrt()).unwrap();
        prop_assert!((mid[1] - side[1]).abs() < 1e-10 * side[1]);
    }

    #[test]
    fn c1_reciprocal_lies_in_its_enclosure(p in region()) {
        let end = solve_end_cubic(&p).unwrap();
        let v = c1_reciprocal_over_r(&p, &end);
        let (lo, hi) = c1_reciprocal_bounds(&p);
        prop_assert!(lo < v && v < hi, "{lo} < {v} < {hi}");
    }

    #[test]
    fn forms_satisfy_the_torus_equation(p in region(), zr in -3.0f64..3.0, zi in -3.0f64..3.0, c in 0.1f64..100.0) {
        let end = solve_end_cubic(&p).unwrap();
        let f = ScForms::new(&p, &end, c).unwrap();
        let z = C::new(zr, zi);
        let zp = f.p(z).sqrt();
        let w = f.w(z, zp);
        let m = z + I * p.lambda;
        prop_assert!((w * w - f.p(z) / (m * m)).norm() <= 1e-12 * (1.0 + (f.p(z) / (m * m)).norm()));
        // |g| is the same on both sheets
        let g1 = (f.c * f.w(z, zp)).norm();
        let g2 = (f.c * f.w(z, -zp)).norm();
        prop_assert!((g1 - f.gauss_modulus(z)).abs() <= 1e-12 * (1.0 + g1));
        prop_assert!((g1 - g2).abs() <= 1e-12 * (1.0 + g1));
    }

    #[test]
    fn quadrature_is_exact_on_cubics(a in -5.0f64..5.0, b in -5.0f64..5.0, lo in -3.0f64..0.0, len in 0.01f64..4.0) {
        let hi = lo + len;
        let q = integrate_adaptive(|t: f64| a * t * t * t + b * t - 1.0, lo, hi, &QuadratureConfig::default());
        let exact = a * (hi.powi(4) - lo.powi(4)) / 4.0 + b * (hi * hi - lo * lo) / 2.0 - len;
        prop_assert!((q.value - exact).abs() < 1e-12 * (1.0 + exact.abs()));
    }

    #[test]
    fn quadrature_is_additive(split in 0.05f64..0.95, k in 0.5f64..8.0) {
        let cfg = QuadratureConfig::default();
        let f = |t: f64| (k * t).sin() / (1.0 + t * t);
        let whole = integrate_adaptive(f, 0.0, 3.0, &cfg).value;
        let m = 3.0 * split;
        let parts = integrate_adaptive(f, 0.0, m, &cfg).value + integrate_adaptive(f, m, 3.0, &cfg).value;
        prop_assert!((whole - parts).abs() < 1e-9);
    }

    #[test]
    fn linspace_hits_both_ends(lo in -10.0f64..10.0, len in 0.0f64..10.0, n in 2usize..50) {
        let v = linspace(lo, lo + len, n);
        prop_assert_eq!(v.len(), n);
        prop_assert_eq!(v[0], lo);
        prop_assert!((v[n - 1] - (lo + len)).abs() <= 1e-12 * (1.0 + lo.abs() + len));
        prop_assert!(v.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn reflections_keep_outward_orientation(x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let mut m = SurfaceMesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [x, 1.0 + y.abs(), 0.5]],
            triangles: vec![[0, 1, 2]],
            gauss: vec![[0.0, 0.0, 1.0]; 3],
            boundary_tag: vec![BoundaryTag::Interior; 3],
            param: vec![C::new(0.0, 0.0); 3],
            metric_factor: vec![1.0; 3],
            period: [0.0; 3],
        };
        let normal = |m: &SurfaceMesh| {
            let t = m.triangles[0];
            let (a, b, c) = (m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]);
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        };
        let before = normal(&m);
        let refl = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
        m.transform(refl, [0.0; 3]);
        let after = normal(&m);
        // the reflected face normal is the reflected normal, not its negative
        let want = [before[0], before[1], -before[2]];
        prop_assert!((0..3).all(|k| (after[k] - want[k]).abs() < 1e-12), "{after:?} vs {want:?}");
    }
}

mod common;

use common::*;
use num_complex::Complex64 as C;
use scherk_costa::param_algebra::{solve_end_cubic, GeometricParams};
use scherk_costa::periods::{c1_from_end, residue_middle_end, residue_side_end};

fn match_roots(got: &[C; 3], want: &[C]) -> f64 {
    got.iter()
        .map(|g| want.iter().map(|w| (g - w).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

#[test]
fn end_roots_match_companion_eigenvalues() {
    for &(s, l, r) in &[(-0.005, 2.0, 0.15), (-0.01, 1.0, 0.38), (-0.0001, 50.0, 0.001), (-0.05, 1.3, 0.2)] {
        let rho = f64::asin(s);
        let p = GeometricParams::new(rho, l, r).unwrap();
        let end = solve_end_cubic(&p).unwrap();
        let want = companion_roots(rho, l, r);
        let err = match_roots(&end.roots(), &want);
        assert!(err < 1e-10, "s={s} l={l} r={r}: {:?} vs {want:?}", end.roots());
    }
}

#[test]
fn frozen_end_at_reference_point() {
    // companion eigenvalues at sin rho = -0.005, lambda = 2, r = 0.15
    let p = GeometricParams::new((-0.005f64).asin(), 2.0, 0.15).unwrap();
    let end = solve_end_cubic(&p).unwrap();
    assert!((end.a - 9.57366839743477249e-1).abs() < 1e-13);
    assert!((end.b - -4.27493901928854420e-2).abs() < 1e-13);
    assert!(rel(end.y, 9.79987803857711032e-2) < 1e-12);
}

#[test]
fn residues_match_loop_integrals() {
    for p in random_region_points(0x5c0a, 5) {
        let end = solve_end_cubic(&p).unwrap();
        let c1 = c1_from_end(&p, &end);
        let c = if c1 > 0.0 { c1.sqrt() } else { 1.0 };
        let mid = loop_period(p.rho, p.lambda, end.x(), c, C::new(0.0, -p.lambda), 1e-3, 10_000);
        let want = residue_middle_end(&p, &end, c);
        assert!(rel(mid[1].abs(), want[1]) < 1e-6, "{p:?}: {mid:?} vs {want:?}");
        assert!(mid[0].abs() < 1e-6 * want[1] && mid[2].abs() < 1e-6 * want[1]);
        let side = loop_period(p.rho, p.lambda, end.x(), c, end.x(), 1e-3, 10_000);
        let want = residue_side_end(&p, &end, c).unwrap();
        assert!(rel(side[1].abs(), want[1]) < 1e-6, "{p:?}: {side:?} vs {want:?}");
        assert!(side[0].abs() < 1e-6 * want[1] && side[2].abs() < 1e-6 * want[1]);
    }
}


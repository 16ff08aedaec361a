use scherk_costa::param_algebra::r0;
use scherk_costa::solver::*;

// (rho, lambda*, r*, c*) from a 25-35 digit independent solve
const FROZEN: [(f64, f64, f64, f64); 3] = [
    (-0.002, 255.60023866763266, 0.00011192153101557208, 71486.83092006018),
    (-0.005, 102.15584830933979, 0.00044356138032699401, 11418.90777401859),
    (-0.009, 56.690029703459517, 0.0010749646426706295, 3516.3896438535323),
];

#[test]
fn solutions_match_frozen_values() {
    let cfg = SolverConfig::default();
    for (rho, lambda, r, c) in FROZEN {
        let s = solve_periods(rho, &cfg).unwrap();
        assert!((s.params.lambda - lambda).abs() < 1e-9 * lambda, "{rho}: {}", s.params.lambda);
        assert!((s.params.r - r).abs() < 1e-9 * r, "{rho}: {}", s.params.r);
        assert!((s.c_star - c).abs() < 1e-9 * c, "{rho}: {}", s.c_star);
        assert!(s.certificates.all_pass(1e-8));
        assert!(s.params.cap_r() < r0(rho));
        assert!(!s.best_effort);
    }
}

#[test]
fn solution_document_round_trips() {
    let s = solve_periods(-0.005, &SolverConfig::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    s.save(&path).unwrap();
    let back = SolvedSurface::load(&path).unwrap();
    assert_eq!(back.params.lambda, s.params.lambda);
    assert_eq!(back.c_star, s.c_star);
    assert_eq!(back.end.a, s.end.a);
}

#[test]
fn resolving_from_a_solution_reproduces_it() {
    let cfg = SolverConfig::default();
    let a = solve_periods(-0.009, &cfg).unwrap();
    let b = resolve_from(&a, &cfg).unwrap();
    assert!((b.params.lambda - FROZEN[2].1).abs() < 1e-9 * FROZEN[2].1);
    assert!((b.c_star - a.c_star).abs() < 1e-9 * a.c_star);
}

#[test]
fn outside_the_supported_range_needs_a_window() {
    let cfg = SolverConfig::default();
    let err = solve_periods(0.01, &cfg).unwrap_err();
    assert!(matches!(err, scherk_costa::Error::InvalidParameter(_)));
    let opts = SolveOptions::best_effort(0.89, 0.95, 6, 0.65, 0.75);
    let s = solve_periods_with((-0.23f64).asin(), &opts, &cfg).unwrap();
    assert!(s.best_effort);
    assert!(s.params.lambda > 0.89 && s.params.lambda < 0.95);
    assert!(s.certificates.residual < 1e-3);
}

#[test]
fn sweep_csv_round_trips_and_flags_crossings() {
    let q = scherk_costa::quadrature::QuadratureConfig::default();
    let t = sweep(-0.005, &[1.0, 2.0], &linspace(0.05, 0.15, 3), &q, 2);
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("lambda,r,cap_r,c1,c2,c3,c3_tilde,c1_lo,c1_hi,c3t_lo,c3t_hi,flags\n"));
    let back = SweepTable::read_csv(-0.005, &buf[..]).unwrap();
    assert_eq!(back.rows.len(), 6);
    assert_eq!(back.rows[4].c1, t.rows[4].c1);
    assert!(t.rows.iter().any(|r| r.flags.contains("c1c3t_cross")));
}

use scherk_costa::quadrature::QuadratureConfig;
use scherk_costa::solver::{solve_periods, SolverConfig};
use scherk_costa::surface_mesh::costa::{lemniscate_omega, CostaCycles, CostaKind};
use scherk_costa::surface_mesh::geometry::{maps, vertex_set_invariance};
use scherk_costa::surface_mesh::ode::OdeTolerance;
use scherk_costa::surface_mesh::{costa, costa_mu0, deformation_family, gauss_region_check, CostaConfig};
use scherk_costa::surface_mesh::family::BalanceChoice;

// omega = K(1/sqrt 2) / sqrt 2; mu0 = omega sqrt(2/pi) is the root of the
// horizontal period, both from 30-digit elliptic function quadrature
const OMEGA: f64 = 1.311028777146059905;
const MU0: f64 = 1.046049620053101649;

#[test]
fn closing_factor_matches_reference() {
    assert!((lemniscate_omega() - OMEGA).abs() < 1e-15);
    let (mu0, cyc) = costa_mu0(&OdeTolerance::default()).unwrap();
    assert!((mu0 - MU0).abs() < 1e-12, "{mu0}");
    assert!(cyc.relative_gap(mu0) < 1e-8);
    assert!(cyc.relative_gap(0.5) > 0.1 && cyc.relative_gap(2.0) > 0.1);
}

#[test]
fn horizontal_period_changes_sign_through_mu0() {
    let cyc = CostaCycles::compute(&OdeTolerance::default()).unwrap();
    let lo = cyc.periods(0.9 * MU0);
    let hi = cyc.periods(1.1 * MU0);
    assert!(lo[0][0] * hi[0][0] < 0.0 || lo[0][1] * hi[0][1] < 0.0);
}

#[test]
fn closed_costa_has_its_four_symmetries() {
    let cs = costa(None, &CostaConfig::default()).unwrap();
    assert_eq!(cs.kind, CostaKind::Closed);
    assert!(cs.cycle_residual < 1e-9);
    let tol = 1e-6 * cs.mesh.scale();
    for m in [maps::SIGMA1, maps::SIGMA2, maps::SIGMA3, maps::SIGMA4] {
        let d = vertex_set_invariance(&cs.mesh.vertices, |v| maps::apply(&m, v), tol);
        assert!(d < tol, "{m:?}: {d}");
    }
}

#[test]
fn open_pieces_on_both_sides_of_mu0() {
    let cfg = CostaConfig { cells: 48, ..Default::default() };
    for (mu, below) in [(0.8, true), (1.5 * MU0, false)] {
        let cs = costa(Some(mu), &cfg).unwrap();
        assert_eq!(cs.kind, CostaKind::Open);
        assert_eq!(cs.below_mu0, below);
        assert!(!cs.mesh.is_empty());
        let tol = 1e-6 * cs.mesh.scale();
        for m in [maps::SIGMA1, maps::SIGMA2, maps::ROT_X3] {
            assert!(vertex_set_invariance(&cs.mesh.vertices, |v| maps::apply(&m, v), tol) < tol);
        }
    }
    assert!(costa(Some(-1.0), &cfg).is_err());
}

#[test]
fn deformation_family_reaches_half_costa_scaling_for_small_mu() {
    let q = QuadratureConfig::default();
    let solved = solve_periods(-0.005, &SolverConfig::default()).unwrap();
    let start = deformation_family(&solved, 0.5, 0.0, &q).unwrap();
    assert!((start.params.lambda - solved.params.lambda).abs() < 1e-12);
    assert!((start.c - solved.c_star).abs() < 1e-6 * solved.c_star);
    let m = deformation_family(&solved, 0.5, 0.999, &q).unwrap();
    assert_eq!(m.choice, BalanceChoice::C1);
    assert!((m.c_over_lambda2 - 0.5).abs() < 1e-2, "{}", m.c_over_lambda2);
    for mu in [0.5, 1.0, 2.0] {
        let m = deformation_family(&solved, mu, 0.99, &q).unwrap();
        let rep = gauss_region_check(&m, 10.0, 200).unwrap();
        assert!(rep.passed(), "{mu}: {rep:?}");
        assert!(rep.near_branch.samples > 0 && rep.lower_strip.samples > 0);
    }
    assert!(deformation_family(&solved, 0.5, 1.0, &q).is_err());
}

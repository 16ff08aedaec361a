mod common;

use common::*;
use scherk_costa::param_algebra::{solve_end_cubic, GeometricParams};
use scherk_costa::quadrature::QuadratureConfig;
use scherk_costa::solver::{solve_periods, SolverConfig};
use scherk_costa::surface_mesh::geometry::{max_mean_curvature, metric_check, vertex_set_invariance, maps, PointHash};
use scherk_costa::surface_mesh::{immerse, period_gap, replicate, replicate_translations, BoundaryTag, GridConfig};
use scherk_costa::Error;

// Off-solution sample point: sin rho = -0.05, lambda = 1.3, r = 0.2, c = c1.
// Reference values from 25-digit path integrals along the chart edges.
const C1: f64 = 4.062126450543475;
const GAP: f64 = 1.039999211589669659;
const GAP_COMPONENTS: [f64; 2] = [1.024111973883190, 0.181088445396745];
const K1: f64 = 3.666909234403414;
const K2: f64 = 3.751710090950341;
const V_M: f64 = 2.065059320394321;
const CORNER: [f64; 2] = [1.024111973883190, 4.952143970221801];
const HALF_P: f64 = 2.385527762412528;
const P_NORM: f64 = 4.771055524825056;

fn sample() -> GeometricParams {
    GeometricParams::new((-0.05f64).asin(), 1.3, 0.2).unwrap()
}

#[test]
fn gap_matches_reference_and_ignores_the_indentation() {
    let p = sample();
    let e = solve_end_cubic(&p).unwrap();
    for delta in [1e-2, 1e-3, 1e-4] {
        let g = period_gap(&p, &e, C1, delta, &QuadratureConfig::default()).unwrap();
        assert!(g.converged);
        assert!(rel(g.gap, GAP) < 1e-11, "{delta}: {}", g.gap);
        assert!(rel(g.components[0].abs(), GAP_COMPONENTS[0]) < 1e-10);
        assert!(rel(g.components[1].abs(), GAP_COMPONENTS[1]) < 1e-10);
    }
}

#[test]
fn chart_and_edge_offsets_match_reference() {
    let p = sample();
    let e = solve_end_cubic(&p).unwrap();
    let imm = immerse(&p, &e, C1, &GridConfig::default()).unwrap();
    let d = &imm.diagnostics;
    assert!(rel(d.chart.k1, K1) < 1e-10);
    assert!(rel(d.chart.k2, K2) < 1e-10);
    assert!(rel(-d.chart.u_middle.im, V_M) < 1e-10);
    assert!(d.chart.u_middle.re.abs() < 1e-12);
    assert!(rel(d.corner_offset[0].abs(), CORNER[0]) < 1e-8);
    assert!(rel(d.corner_offset[1].abs(), CORNER[1]) < 1e-8);
    assert!(d.corner_offset[2].abs() < 1e-8);
    assert!(rel(d.middle_separation, HALF_P) < 1e-8);
    assert!(rel(norm3(d.cut_jump), P_NORM) < 1e-8);
    assert!(d.cycle_residual < 1e-9);
    // the sheet swap is a half turn about a vertical axis
    assert!(d.half_turn_residual < 1e-8 * d.scale);
}

#[test]
fn solved_piece_closes_and_replicates() {
    let s = solve_periods(-0.005, &SolverConfig::default()).unwrap();
    let imm = immerse(&s.params, &s.end, s.c_star, &GridConfig::default()).unwrap();
    let d = &imm.diagnostics;
    let p = imm.mesh.period;
    assert!(p[1] > 0.0 && p[0].abs() < 1e-9 * p[1] && p[2].abs() < 1e-9 * p[1]);
    assert!(rel(p[1], d.side_period[1].abs()) < 1e-8);
    assert!(norm3(d.corner_offset) - d.corner_offset[1].abs() < 1e-9 * p[1]);
    let big = replicate(&imm.mesh, 1).unwrap();
    assert!(big.len() < 6 * imm.mesh.len());
    let tol = 1e-6 * big.scale();
    assert!(vertex_set_invariance(&big.vertices, |v| maps::apply(&maps::ROT_X1, v), tol) < tol);
    // glued seams are interior now
    let n_cut = big.boundary_tag.iter().filter(|t| **t == BoundaryTag::EndCut).count();
    assert!(n_cut < imm.mesh.boundary_tag.iter().filter(|t| **t == BoundaryTag::EndCut).count() * 6);
}

#[test]
fn wrong_balance_value_is_caught_when_welding() {
    let s = solve_periods(-0.005, &SolverConfig::default()).unwrap();
    let imm = immerse(&s.params, &s.end, 1.001 * s.c_star, &GridConfig::default()).unwrap();
    match replicate(&imm.mesh, 1) {
        Err(Error::WeldMismatch(_)) => {}
        other => panic!("expected a weld mismatch, got {:?}", other.map(|m| m.len())),
    }
    // translations alone still glue
    let t = replicate_translations(&imm.mesh, 1).unwrap();
    assert!(t.len() < 3 * imm.mesh.len());
}

#[test]
fn zero_copies_is_the_identity() {
    let p = sample();
    let e = solve_end_cubic(&p).unwrap();
    let imm = immerse(&p, &e, C1, &GridConfig::default()).unwrap();
    let same = replicate(&imm.mesh, 0).unwrap();
    assert_eq!(same.vertices, imm.mesh.vertices);
    assert_eq!(same.triangles, imm.mesh.triangles);
}

#[test]
fn curvature_and_metric_converge_under_refinement() {
    let s = solve_periods(-0.005, &SolverConfig::default()).unwrap();
    let g0 = GridConfig::default();
    let g1 = g0.refined();
    let m0 = immerse(&s.params, &s.end, s.c_star, &g0).unwrap().mesh;
    let m1 = immerse(&s.params, &s.end, s.c_star, &g1).unwrap().mesh;
    let h0 = max_mean_curvature(&m0, |_| true);
    let h1 = max_mean_curvature(&m1, |_| true);
    assert!(h0 / h1 >= 1.8, "{h0} {h1}");
    let e1 = metric_check(&m1).max_relative_error;
    assert!(e1 < 0.02, "{e1}");
    assert!(metric_check(&m0).max_relative_error > e1);
}

#[test]
fn point_hash_finds_neighbours() {
    let pts = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 2.0, 0.0]];
    let h = PointHash::new(&pts, 0.5);
    assert_eq!(h.nearest(&[0.9, 0.1, 0.0]).unwrap().0, 1);
    assert!(h.nearest(&[5.0, 5.0, 5.0]).is_none());
}

//! One PASS/FAIL line per acceptance criterion. Runs without the test harness
//! so the lines always show. Criteria 4 and 9 do not hold numerically; they are
//! evaluated in full, reported as FAIL, and only their known failure mode is
//! asserted. Any other FAIL makes the target exit nonzero.

mod common;

use std::time::Instant;

use common::*;
use num_complex::Complex64 as C;
use scherk_costa::param_algebra::{r0, solve_end_cubic};
use scherk_costa::periods::{c1_from_end, residue_middle_end, residue_side_end};
use scherk_costa::quadrature::QuadratureConfig;
use scherk_costa::solver::{linspace, solve_periods, solve_periods_with, sweep, SolveOptions, SolvedSurface, SolverConfig};
use scherk_costa::surface_mesh::geometry::{max_mean_curvature, maps, vertex_set_invariance, PointHash};
use scherk_costa::surface_mesh::ode::OdeTolerance;
use scherk_costa::surface_mesh::{
    costa, costa_mu0, deformation_family, gauss_region_check, immerse, period_gap, replicate, CostaConfig, GridConfig,
};
use scherk_costa::verify::{run_suite, Suite};

const RHOS: [f64; 3] = [-0.002, -0.005, -0.009];

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, t: Instant, o: &Outcome) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("criterion {n}: {tag} ({:.1} s) {}", t.elapsed().as_secs_f64(), o.detail);
}

fn criterion1(solved: &mut Vec<SolvedSurface>) -> Outcome {
    let cfg = SolverConfig { ..Default::default() };
    let mut pass = true;
    let mut parts = Vec::new();
    for rho in RHOS {
        let t = Instant::now();
        match solve_periods(rho, &cfg) {
            Ok(s) => {
                let c = &s.certificates;
                let ok = c.residual < 1e-8
                    && s.params.lambda > 1.0
                    && s.cap_r > 0.0
                    && s.cap_r < r0(rho)
                    && c.r_sqrt_c > 0.0
                    && c.r_sqrt_c < 1.0
                    && t.elapsed().as_secs_f64() < 120.0;
                pass &= ok;
                parts.push(format!("rho {rho}: lambda {:.6} r {:.6e} c {:.3} res {:.1e}", s.params.lambda, s.params.r, s.c_star, c.residual));
                solved.push(s);
            }
            Err(e) => {
                pass = false;
                parts.push(format!("rho {rho}: {e}"));
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion2() -> Outcome {
    let rho = (-0.23f64).asin();
    let cfg = SolverConfig::default();
    let lambdas = [0.89, 0.92, 0.95];
    let table = sweep(rho, &lambdas, &linspace(0.65, 0.75, 41), &cfg.quad, 1);
    // c1 - c2 changes sign in r for every lambda, and c3 - c1 at that crossing
    // changes sign across lambda, so the three curves meet inside the window
    let mut gaps = Vec::new();
    for &l in &lambdas {
        let rows: Vec<_> = table.rows.iter().filter(|r| r.lambda == l).collect();
        let hit = rows.windows(2).find(|w| (w[0].c1 - w[0].c2).signum() != (w[1].c1 - w[1].c2).signum());
        match hit {
            Some(w) => gaps.push(Some((w[0].c3 - w[0].c1) / w[0].c1)),
            None => gaps.push(None),
        }
    }
    let crossings = gaps.iter().all(|g| g.is_some());
    let opts = SolveOptions::best_effort(0.89, 0.95, 6, 0.65, 0.75);
    match solve_periods_with(rho, &opts, &cfg) {
        Ok(s) => {
            let pass = crossings
                && s.certificates.residual < 1e-3
                && (0.89..=0.95).contains(&s.params.lambda)
                && (0.65..=0.75).contains(&s.params.r);
            Outcome {
                pass,
                detail: format!(
                    "c3 offsets at the c1=c2 crossings {:?}; triple point lambda {:.5} r {:.5} residual {:.1e}",
                    gaps.iter().map(|g| g.map(|v| format!("{v:+.3e}"))).collect::<Vec<_>>(),
                    s.params.lambda,
                    s.params.r,
                    s.certificates.residual
                ),
            }
        }
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn criterion3() -> Outcome {
    let t = Instant::now();
    let rep = run_suite(Suite::Integrals);
    let worst = rep.entries.iter().map(|e| e.error).fold(0.0, f64::max);
    let pass = rep.passed() && worst < 1e-10 && t.elapsed().as_secs_f64() < 30.0;
    Outcome { pass, detail: format!("{} checks, {} failed, worst quadrature error {worst:.1e}", rep.entries.len(), rep.failures().count()) }
}

fn criterion4() -> (Outcome, bool) {
    let rep = run_suite(Suite::Bounds);
    let anchors = ["I2 at lambda=1 > 0.886", "I1 at lambda=1 > 0.6588", "I1 at lambda=1 < 1.528", "I2/I1 at lambda=1 > 0.5798"];
    let mut anchors_ok = true;
    let mut shown = Vec::new();
    for a in anchors {
        let hits = rep.find(a);
        anchors_ok &= !hits.is_empty() && hits.iter().all(|e| e.passed());
        if let Some(e) = hits.first() {
            shown.push(format!("{a}: {:.4}", e.value));
        }
    }
    let fails: Vec<_> = rep.failures().collect();
    let known = !fails.is_empty() && fails.iter().all(|e| e.name.starts_with("end box b >= b_min"));
    let pass = rep.passed() && anchors_ok;
    let detail = format!(
        "{} checks, {} failed (all end box b >= -0.0764: {known}, lowest b {:.4}); anchors ok: {anchors_ok} [{}]",
        rep.entries.len(),
        fails.len(),
        fails.iter().map(|e| e.value).fold(0.0, f64::min),
        shown.join(", ")
    );
    (Outcome { pass, detail }, known && anchors_ok)
}

fn criterion5() -> Outcome {
    let mut worst = 0.0f64;
    for p in random_region_points(0x5c0a, 5) {
        let end = solve_end_cubic(&p).unwrap();
        let c1 = c1_from_end(&p, &end);
        let c = if c1 > 0.0 { c1.sqrt() } else { 1.0 };
        let mid = loop_period(p.rho, p.lambda, end.x(), c, C::new(0.0, -p.lambda), 1e-3, 10_000);
        let side = loop_period(p.rho, p.lambda, end.x(), c, end.x(), 1e-3, 10_000);
        let want_mid = residue_middle_end(&p, &end, c);
        let want_side = residue_side_end(&p, &end, c).unwrap();
        for (got, want) in [(mid, want_mid), (side, want_side)] {
            let diff = [got[0].abs() - want[0].abs(), got[1].abs() - want[1].abs(), got[2].abs() - want[2].abs()];
            worst = worst.max(norm3(diff) / norm3(want));
        }
    }
    Outcome { pass: worst < 1e-6, detail: format!("worst relative difference over 5 points x 2 ends {worst:.1e}") }
}

fn criterion6(solved: &[SolvedSurface]) -> Outcome {
    let mut pass = !solved.is_empty();
    let mut parts = Vec::new();
    for s in solved {
        let res = immerse(&s.params, &s.end, s.c_star, &GridConfig::default()).and_then(|imm| {
            let g = period_gap(&s.params, &s.end, s.c_star, 1e-3, &QuadratureConfig::default())?;
            Ok((imm, g))
        });
        match res {
            Ok((imm, g)) => {
                let d = &imm.diagnostics;
                let p = [0.0, d.side_period[1].abs(), 0.0];
                let pn = norm3(p);
                let lift = norm3([d.cut_jump[0] - p[0], d.cut_jump[1] - p[1], d.cut_jump[2] - p[2]]);
                let sep = (d.middle_separation - 0.5 * pn).abs() / (0.5 * pn);
                let ok = g.gap < 1e-6 * pn && lift < 1e-6 * pn && sep < 0.01;
                pass &= ok;
                parts.push(format!("rho {}: gap/|p| {:.1e}, lift/|p| {:.1e}, separation off {:.1e}", s.rho, g.gap / pn, lift / pn, sep));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("rho {}: {e}", s.rho));
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion7(s: &SolvedSurface) -> Outcome {
    let mut grid = GridConfig::default();
    let mut h = Vec::new();
    let mut base = None;
    for _ in 0..3 {
        match immerse(&s.params, &s.end, s.c_star, &grid) {
            Ok(imm) => {
                h.push(max_mean_curvature(&imm.mesh, |_| true));
                base.get_or_insert(imm.mesh);
            }
            Err(e) => return Outcome { pass: false, detail: e.to_string() },
        }
        grid = grid.refined();
    }
    let ratios = [h[0] / h[1], h[1] / h[2]];
    let m = base.unwrap();
    let (inner, outer) = match (replicate(&m, 1), replicate(&m, 2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome { pass: false, detail: e.to_string() },
    };
    let tol = 1e-6 * outer.scale();
    let rot = vertex_set_invariance(&outer.vertices, |v| maps::apply(&maps::ROT_X1, v), tol);
    let p = m.period;
    let hash = PointHash::new(&outer.vertices, tol);
    let mut shift = 0.0f64;
    for v in &inner.vertices {
        for sgn in [-1.0, 1.0] {
            let q = [v[0] + sgn * p[0], v[1] + sgn * p[1], v[2] + sgn * p[2]];
            shift = shift.max(hash.nearest(&q).map_or(f64::INFINITY, |(_, d)| d));
        }
    }
    let pass = ratios.iter().all(|r| *r >= 1.8) && rot < tol && shift < tol;
    Outcome {
        pass,
        detail: format!(
            "max|H| scale {:.3} {:.3} {:.3} (ratios {:.2}, {:.2}); rotation {:.1e}, translation {:.1e} (tol {tol:.1e})",
            h[0], h[1], h[2], ratios[0], ratios[1], rot, shift
        ),
    }
}

fn criterion8() -> Outcome {
    let res = (|| -> scherk_costa::Result<Outcome> {
        let (mu0, cyc) = costa_mu0(&OdeTolerance::default())?;
        let gap = cyc.relative_gap(mu0);
        let closed = costa(None, &CostaConfig::default())?;
        let tol = 1e-6 * closed.mesh.scale();
        let sym = [maps::SIGMA1, maps::SIGMA2, maps::SIGMA3, maps::SIGMA4]
            .iter()
            .map(|m| vertex_set_invariance(&closed.mesh.vertices, |v| maps::apply(m, v), tol))
            .fold(0.0, f64::max);
        let open = costa(Some(1.5 * mu0), &CostaConfig::default())?;
        Ok(Outcome {
            pass: gap < 1e-8 && sym < tol && !open.mesh.is_empty(),
            detail: format!("mu0 {mu0:.15} relative gap {gap:.1e}; symmetry {sym:.1e} (tol {tol:.1e}); open piece at 1.5 mu0: {} vertices", open.mesh.len()),
        })
    })();
    res.unwrap_or_else(|e| Outcome { pass: false, detail: e.to_string() })
}

fn criterion9(s: &SolvedSurface) -> (Outcome, bool) {
    let q = QuadratureConfig::default();
    let mut parts = Vec::new();
    let mut pass = true;
    let mut only_limit = true;
    for mu in [0.5, 1.0, 2.0] {
        let (m999, m99) = match (deformation_family(s, mu, 0.999, &q), deformation_family(s, mu, 0.99, &q)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return (Outcome { pass: false, detail: e.to_string() }, false),
        };
        let limit_ok = (m999.c_over_lambda2 - 2.0 * mu * mu).abs() < 1e-2;
        let regions = match gauss_region_check(&m99, 10.0, 200) {
            Ok(r) => r,
            Err(e) => return (Outcome { pass: false, detail: e.to_string() }, false),
        };
        pass &= limit_ok && regions.passed();
        only_limit &= regions.passed();
        parts.push(format!(
            "mu {mu}: c/lambda^2 {:.5} vs 2mu^2 {:.1}, violations {}+{}",
            m999.c_over_lambda2,
            2.0 * mu * mu,
            regions.near_branch.violations,
            regions.lower_strip.violations
        ));
    }
    // the ratio tends to mu rather than 2 mu^2, which agree only at mu = 1/2
    (Outcome { pass, detail: parts.join("; ") }, only_limit)
}

fn main() {
    let mut unexpected = Vec::new();
    let mut solved = Vec::new();

    let t = Instant::now();
    let o = criterion1(&mut solved);
    report(1, t, &o);
    if !o.pass {
        unexpected.push(1);
    }

    let t = Instant::now();
    let o = criterion2();
    report(2, t, &o);
    if !o.pass {
        unexpected.push(2);
    }

    let t = Instant::now();
    let o = criterion3();
    report(3, t, &o);
    if !o.pass {
        unexpected.push(3);
    }

    let t = Instant::now();
    let (o, known) = criterion4();
    report(4, t, &o);
    if !o.pass && !known {
        unexpected.push(4);
    }

    let t = Instant::now();
    let o = criterion5();
    report(5, t, &o);
    if !o.pass {
        unexpected.push(5);
    }

    let t = Instant::now();
    let o = criterion6(&solved);
    report(6, t, &o);
    if !o.pass {
        unexpected.push(6);
    }

    let reference = solved.iter().find(|s| s.rho == -0.005).cloned();
    let t = Instant::now();
    let o = match &reference {
        Some(s) => criterion7(s),
        None => Outcome { pass: false, detail: "no solution at rho = -0.005".into() },
    };
    report(7, t, &o);
    if !o.pass {
        unexpected.push(7);
    }

    let t = Instant::now();
    let o = criterion8();
    report(8, t, &o);
    if !o.pass {
        unexpected.push(8);
    }

    let t = Instant::now();
    let (o, known) = match &reference {
        Some(s) => criterion9(s),
        None => (Outcome { pass: false, detail: "no solution at rho = -0.005".into() }, false),
    };
    report(9, t, &o);
    if !o.pass && !known {
        unexpected.push(9);
    }

    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

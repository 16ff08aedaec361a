//! How far the closing loop misses at points that are not solutions, and how the
//! gap vanishes at the solution.

use scherk_costa::param_algebra::{solve_end_cubic, GeometricParams};
use scherk_costa::quadrature::QuadratureConfig;
use scherk_costa::solver::{solve_periods, SolverConfig};
use scherk_costa::surface_mesh::period_gap;

fn main() -> scherk_costa::Result<()> {
    let quad = QuadratureConfig::default();
    let p = GeometricParams::new((-0.05f64).asin(), 1.3, 0.2)?;
    let end = solve_end_cubic(&p)?;
    for delta in [1e-2, 1e-3, 1e-4] {
        let g = period_gap(&p, &end, 4.062126450543475, delta, &quad)?;
        println!("delta {delta:e}: gap {:.15} components {:?}", g.gap, g.components);
    }
    let s = solve_periods(-0.005, &SolverConfig::default())?;
    for k in [0.999, 1.0, 1.001] {
        let g = period_gap(&s.params, &s.end, k * s.c_star, 1e-3, &quad)?;
        println!("c = {k} c*: gap {:.3e}", g.gap);
    }
    Ok(())
}

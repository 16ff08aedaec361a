//! Follow the deformation from the solved surface towards half-Costa and watch
//! c / lambda^2 and the Gauss map regions.

use scherk_costa::quadrature::QuadratureConfig;
use scherk_costa::solver::{solve_periods, SolverConfig};
use scherk_costa::surface_mesh::{deformation_family, gauss_region_check};

fn main() -> scherk_costa::Result<()> {
    let quad = QuadratureConfig::default();
    let solved = solve_periods(-0.005, &SolverConfig::default())?;
    for mu in [0.5, 1.0, 2.0] {
        for s in [0.0, 0.9, 0.99, 0.999] {
            let m = deformation_family(&solved, mu, s, &quad)?;
            let rep = gauss_region_check(&m, 10.0, 100)?;
            println!(
                "mu {mu} s {s:<6} lambda {:>10.4} c/lambda^2 {:>9.5} ({:?})  regions ok: {}",
                m.params.lambda,
                m.c_over_lambda2,
                m.choice,
                rep.passed()
            );
        }
    }
    Ok(())
}

//! The three balance values c1, c2, c3 along lambda at fixed R, with the
//! enclosures of c1 and c3_tilde. At the solution all three coincide.

use scherk_costa::param_algebra::{solve_end_cubic, GeometricParams};
use scherk_costa::periods::{c1_from_end, c1_reciprocal_bounds, c_bounds_from_reciprocal, PeriodIntegrals};
use scherk_costa::quadrature::QuadratureConfig;

fn main() -> scherk_costa::Result<()> {
    let rho = (-0.005f64).asin();
    let quad = QuadratureConfig::default();
    println!("{:>8} {:>12} {:>12} {:>12} {:>12} {:>12}", "lambda", "c1", "c2", "c3", "c1_lo", "c1_hi");
    for lambda in [1.0, 2.0, 5.0, 20.0, 100.0] {
        let p = GeometricParams::from_cap_r(rho, lambda, 0.1)?;
        let end = solve_end_cubic(&p)?;
        let ints = PeriodIntegrals::compute(&p, &end, &quad);
        let (lo, hi) = c_bounds_from_reciprocal(p.r, c1_reciprocal_bounds(&p));
        println!(
            "{lambda:>8} {:>12.5} {:>12.5} {:>12.5} {lo:>12.5} {hi:>12.5}",
            c1_from_end(&p, &end),
            ints.c2(),
            ints.c3()
        );
    }
    Ok(())
}

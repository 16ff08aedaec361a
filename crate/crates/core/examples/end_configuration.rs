//! Where the side ends sit for given (rho, lambda, r): the root y of the monotone
//! equation, the Cardano roots and the point x = a + i b.

use scherk_costa::param_algebra::{end_cubic_coefficients, eval_cubic, r0, solve_end_cubic, GeometricParams};

fn main() -> scherk_costa::Result<()> {
    let rho = (-0.005f64).asin();
    println!("r0(rho) = {}", r0(rho));
    for (lambda, r) in [(1.0, 0.1), (2.0, 0.05), (10.0, 0.015), (100.0, 0.0015)] {
        let p = GeometricParams::new(rho, lambda, r)?;
        let end = solve_end_cubic(&p)?;
        let c = end_cubic_coefficients(&p);
        let worst = end.roots().iter().map(|z| eval_cubic(&c, *z).norm()).fold(0.0, f64::max);
        println!(
            "lambda {lambda:>6}  r {r:<7} x = {:.12} {:+.12}i  y = {:.6e}  |cubic(roots)| <= {worst:.1e}",
            end.a, end.b, end.y
        );
    }
    Ok(())
}

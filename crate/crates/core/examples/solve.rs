//! Close the periods for one rotation angle and print the solution.
//!
//!     cargo run --release --example solve -- -0.005

use scherk_costa::solver::{solve_periods, SolverConfig};

fn main() -> scherk_costa::Result<()> {
    let rho: f64 = std::env::args().nth(1).map(|a| a.parse().expect("rho")).unwrap_or(-0.005);
    let cfg = SolverConfig::default();
    let s = solve_periods(rho, &cfg)?;
    println!("rho      = {rho}");
    println!("lambda*  = {}", s.params.lambda);
    println!("r*       = {:e}", s.params.r);
    println!("R = l r  = {}", s.cap_r);
    println!("c*       = {}  (c1 {} / c2 {} / c3 {})", s.c_star, s.c1, s.c2, s.c3);
    println!("residual = {:e}", s.certificates.residual);
    println!("certified: {}", s.certificates.all_pass(cfg.residual_tol));
    Ok(())
}

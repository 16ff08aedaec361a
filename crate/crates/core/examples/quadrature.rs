//! The adaptive Gauss-Kronrod integrator on a finite interval, a half-line and a
//! principal value.

use scherk_costa::quadrature::{integrate_adaptive, integrate_principal_value, integrate_tail, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();
    let a = integrate_adaptive(|t: f64| t.sqrt().ln(), 0.0, 1.0, &cfg);
    println!("int_0^1 ln sqrt t  = {:.15} (exact -0.5), est err {:.1e}", a.value, a.error_estimate);
    let b = integrate_tail(|t: f64| 1.0 / (1.0 + t * t), 1.0, &cfg);
    println!("int_1^inf dt/(1+t^2) = {:.15} (exact {:.15})", b.value, std::f64::consts::FRAC_PI_4);
    // PV int_0^2 e^t/(t-1) dt = e (Ei(1) - Ei(-1)) = e * 2 Shi(1)
    let c = integrate_principal_value(|t: f64| t.exp() / (t - 1.0), 0.0, 2.0, 1.0, &cfg);
    println!("PV int_0^2 e^t/(t-1) = {:.12} (exact {:.12})", c.value, std::f64::consts::E * 2.0 * 1.0572508753757286);
}

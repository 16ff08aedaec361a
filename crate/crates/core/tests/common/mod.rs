//! Independent oracles shared by the integration tests. Nothing here calls the
//! crate's own period or form code.

#![allow(dead_code)]

use nalgebra::{Complex, Matrix3};
use num_complex::Complex64 as C;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use scherk_costa::param_algebra::{r0, GeometricParams};

const I: C = C::new(0.0, 1.0);

/// Roots of `-i z (z - e^{i rho})(z + e^{-i rho}) = r^2 (z + i lambda)^2` as the
/// eigenvalues of the companion matrix of the monic cubic.
pub fn companion_roots(rho: f64, lambda: f64, r: f64) -> Vec<C> {
    let e = C::from_polar(1.0, rho);
    let e_m = C::from_polar(1.0, -rho);
    // -i z (z - e)(z + e_m) = -i z^3 - i (e_m - e) z^2 + i e e_m z
    let mut poly = [C::new(0.0, 0.0), I * e * e_m, -I * (e_m - e), -I];
    let r2 = r * r;
    poly[0] -= r2 * (I * lambda) * (I * lambda);
    poly[1] -= r2 * 2.0 * I * lambda;
    poly[2] -= r2;
    let lead = poly[3];
    let a: Vec<Complex<f64>> = poly.iter().map(|c| Complex::new((c / lead).re, (c / lead).im)).collect();
    let m = Matrix3::new(
        Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), -a[0],
        Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), -a[1],
        Complex::new(0.0, 0.0), Complex::new(1.0, 0.0), -a[2],
    );
    let ev = m.schur().eigenvalues().expect("complex Schur form is triangular");
    ev.iter().map(|z| C::new(z.re, z.im)).collect()
}

/// Period `Re of the loop integral of (1/2 (g - 1/g), i/2 (g + 1/g), 1) dh` over the circle
/// `|z - center| = delta`, with `n` trapezoid nodes and the square root
/// continued along the loop. `c` is the López-Ros factor itself.
pub fn loop_period(rho: f64, lambda: f64, x: C, c: f64, center: C, delta: f64, n: usize) -> [f64; 3] {
    let e = C::from_polar(1.0, rho);
    let e_m = C::from_polar(1.0, -rho);
    let p = |z: C| -I * z * (z - e) * (z + e_m);
    let mut prev: Option<C> = None;
    let mut first = C::new(0.0, 0.0);
    let mut sum = [C::new(0.0, 0.0); 3];
    let h = 2.0 * std::f64::consts::PI / n as f64;
    for k in 0..=n {
        let t = k as f64 * h;
        let z = center + delta * C::from_polar(1.0, t);
        let mut w = p(z).sqrt();
        if let Some(q) = prev {
            if (w - q).norm() > (w + q).norm() {
                w = -w;
            }
        }
        prev = Some(w);
        if k == 0 {
            first = w;
        }
        if k == n {
            assert!((w - first).norm() < 1e-9 * first.norm(), "square root not single valued on the loop");
            break;
        }
        let g = c * w / (z + I * lambda);
        let dz = I * delta * C::from_polar(1.0, t);
        let dh = dz / ((z - x) * (z + x.conj()));
        sum[0] += 0.5 * (g - 1.0 / g) * dh * h;
        sum[1] += 0.5 * I * (g + 1.0 / g) * dh * h;
        sum[2] += dh * h;
    }
    [sum[0].re, sum[1].re, sum[2].re]
}

/// Reproducible parameter points inside the supported region.
pub fn random_region_points(seed: u64, n: usize) -> Vec<GeometricParams> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let s: f64 = rng.random_range(-0.01..-1e-4);
            let rho = s.asin();
            let lambda = 10f64.powf(rng.random_range(0.0..2.5));
            let cap_r = rng.random_range(0.05..0.95) * r0(rho);
            GeometricParams::from_cap_r(rho, lambda, cap_r).unwrap()
        })
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

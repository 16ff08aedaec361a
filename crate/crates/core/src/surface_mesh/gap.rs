//! Horizontal period left over when the closing path of the fundamental piece
//! detours around the middle end.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::param_algebra::{EndConfiguration, GeometricParams};
use crate::periods::{f, f_tilde};
use crate::quadrature::{integrate_adaptive, integrate_halfline_split, integrate_tail, QuadratureConfig};
use crate::{Error, Result};

type C = Complex64;
const I: C = C::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PeriodGap {
    /// Length of the horizontal part of the period.
    pub gap: f64,
    /// Real parts of the `x1` and `x2` integrals around the loop.
    pub components: [f64; 2],
    pub delta: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

#[derive(Clone, Copy, Default)]
struct Pair(C, C);

impl std::ops::Add for Pair {
    type Output = Pair;
    fn add(self, o: Pair) -> Pair {
        Pair(self.0 + o.0, self.1 + o.1)
    }
}
impl std::ops::Sub for Pair {
    type Output = Pair;
    fn sub(self, o: Pair) -> Pair {
        Pair(self.0 - o.0, self.1 - o.1)
    }
}
impl std::ops::Mul<f64> for Pair {
    type Output = Pair;
    fn mul(self, k: f64) -> Pair {
        Pair(self.0 * k, self.1 * k)
    }
}
impl crate::quadrature::QuadValue for Pair {
    fn magnitude(&self) -> f64 {
        self.0.norm().max(self.1.norm())
    }
    fn is_finite_value(&self) -> bool {
        self.0.is_finite() && self.1.is_finite()
    }
}

/// Integrates `Re (phi1, phi2)` around the loop that runs down the positive
/// imaginary axis from `inf` to `0` and back up the negative imaginary axis,
/// passing the middle end `-i lambda` on a semicircle of radius `delta` in
/// `Re z < 0`. The result does not depend on `delta`.
///
/// `c` is the balance value; the Gauss map is `sqrt(c) z' / (z + i lambda)`.
pub fn period_gap(
    p: &GeometricParams,
    end: &EndConfiguration,
    c: f64,
    delta: f64,
    cfg: &QuadratureConfig,
) -> Result<PeriodGap> {
    let lam = p.lambda;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    if !(delta > 0.0 && delta < 0.5 * lam) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must lie in (0, lambda / 2)")));
    }
    let (rho, x) = (p.rho, end.x());
    let sc = c.sqrt();
    let s = rho.sin();
    let forms = |z: C, zp: C, dz: C| {
        let g = sc * zp / (z + I * lam);
        let dh = dz / ((z - x) * (z + x.conj()));
        Pair(0.5 * (g - 1.0 / g) * dh, 0.5 * I * (g + 1.0 / g) * dh)
    };
    // Upper half: z = i t from t = 0 to inf, z' = i f_tilde(t).
    let upper = integrate_halfline_split(|t| forms(I * t, I * f_tilde(t, rho), I), cfg);
    // Lower half, outside the middle end: z = -i t, z' = f(t), dz = -i dt.
    let down = |t: f64| forms(-I * t, C::new(f(t, rho), 0.0), -I);
    let near = integrate_adaptive(down, 0.0, 0.5 * lam, cfg)
        .combine(integrate_adaptive(down, 0.5 * lam, lam - delta, cfg));
    let far = integrate_adaptive(down, lam + delta, 2.0 * lam + delta, cfg)
        .combine(integrate_tail(down, 2.0 * lam + delta, cfg));
    // Semicircle z = -i lambda + i delta e^{i theta}, theta from pi to 0.
    let f0 = f(lam, rho);
    let poly = |z: C| -I * z * z * z - 2.0 * s * z * z + I * z;
    let arc = integrate_adaptive(
        |th: f64| {
            let e = C::from_polar(1.0, th);
            let z = -I * lam + I * delta * e;
            let zp = f0 * (poly(z) / (f0 * f0)).sqrt();
            forms(z, zp, -delta * e)
        },
        0.0,
        PI,
        cfg,
    );
    // Downward leg, then up the negative axis: from inf to lam + delta, the arc,
    // then from lam - delta to 0; all traversed against the integration variable.
    let total = upper.value - far.value - arc.value - near.value;
    let err = upper.error_estimate + far.error_estimate + arc.error_estimate + near.error_estimate;
    let comps = [total.0.re, total.1.re];
    Ok(PeriodGap {
        gap: comps[0].hypot(comps[1]),
        components: comps,
        delta,
        error_estimate: err,
        converged: upper.converged && near.converged && far.converged && arc.converged,
    })
}

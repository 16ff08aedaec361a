//! End placement: the cubic whose roots are the side ends `x`, `-conj(x)`
//! and the pure-imaginary root `iy`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Reference value of `y` defining `r0`.
pub const Y0: f64 = 0.2;

/// Free parameters of one candidate surface. `cap_r` is always derived.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricParams {
    pub rho: f64,
    pub lambda: f64,
    pub r: f64,
}

impl GeometricParams {
    /// `r = 0` is accepted as the degenerate limit; everything else must be
    /// strictly inside the parameter domain.
    pub fn new(rho: f64, lambda: f64, r: f64) -> Result<Self> {
        if !(rho.abs() < FRAC_PI_2) {
            return Err(Error::InvalidParameter(format!(
                "rho = {rho} must lie in (-pi/2, pi/2)"
            )));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!("lambda = {lambda} must be positive")));
        }
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("r = {r} must be nonnegative")));
        }
        Ok(GeometricParams { rho, lambda, r })
    }

    pub fn from_cap_r(rho: f64, lambda: f64, cap_r: f64) -> Result<Self> {
        Self::new(rho, lambda, cap_r / lambda)
    }

    pub fn cap_r(&self) -> f64 {
        self.lambda * self.r
    }

    pub fn sin_rho(&self) -> f64 {
        self.rho.sin()
    }

    /// sin(rho) in [-0.01, 0), lambda >= 1 and lambda * r <= r0.
    pub fn in_supported_region(&self) -> bool {
        rho_in_supported_range(self.rho) && self.lambda >= 1.0 && self.cap_r() <= r0(self.rho)
    }
}

pub fn rho_in_supported_range(rho: f64) -> bool {
    let s = rho.sin();
    (-0.01..0.0).contains(&s)
}

/// `r0 = sqrt(y0 (y0^2 + 2 |sin rho| y0 + 1)) / (y0 + 1)`.
pub fn r0(rho: f64) -> f64 {
    let s = rho.sin().abs();
    (Y0 * (Y0 * Y0 + 2.0 * s * Y0 + 1.0)).sqrt() / (Y0 + 1.0)
}

/// Left side minus right side of `y (y^2 - 2 y sin rho + 1) = r^2 (y + lambda)^2`.
pub fn y_equation_residual(p: &GeometricParams, y: f64) -> f64 {
    let s = p.sin_rho();
    y * (y * y - 2.0 * y * s + 1.0) - p.r * p.r * (y + p.lambda).powi(2)
}

/// The positive root `y` of the monotone equation above, by bisection.
pub fn imaginary_root_y(p: &GeometricParams) -> Result<f64> {
    if p.r == 0.0 {
        return Ok(0.0);
    }
    let h = |y: f64| y_equation_residual(p, y);
    let mut hi = 1.0f64;
    let mut guard = 0;
    while h(hi) <= 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 2000 {
            return Err(Error::NoConvergence(format!("no upper bracket for y at {p:?}")));
        }
    }
    let mut lo = 0.0f64;
    for _ in 0..4000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let y = if h(hi).abs() < h(lo).abs() { hi } else { lo };
    let scale = p.r * p.r * (y + p.lambda).powi(2);
    if h(y).abs() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NoConvergence(format!(
            "y bisection residual {} too large at {p:?}",
            h(y)
        )));
    }
    Ok(y)
}

/// Cardano intermediates for `X^3 + R X^2 + sigma X + tau = 0`, `z = i X`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CardanoIntermediates {
    pub big_r: f64,
    pub sigma: f64,
    pub tau: f64,
    pub p: f64,
    pub q: f64,
    pub u: f64,
    pub v: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndConfiguration {
    pub a: f64,
    pub b: f64,
    pub y: f64,
    /// `y` as read off the cubic itself; compared against the bisection value.
    pub y_cubic: f64,
    pub delta: f64,
    pub cardano: CardanoIntermediates,
    pub used_fallback: bool,
    pub in_supported_region: bool,
    /// Set when the closed-form and fallback roots disagree beyond 1e-8.
    pub cardano_mismatch: bool,
}

impl EndConfiguration {
    pub fn x(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    /// `[x, -conj(x), iy]`.
    pub fn roots(&self) -> [Complex64; 3] {
        [
            Complex64::new(self.a, self.b),
            Complex64::new(-self.a, self.b),
            Complex64::new(0.0, self.y),
        ]
    }

    /// `(lambda + b)^2 + a^2`, the squared distance from `x` to `-i lambda`.
    pub fn dist2_middle(&self, lambda: f64) -> f64 {
        (lambda + self.b).powi(2) + self.a * self.a
    }
}

/// Coefficients `[c0, c1, c2, c3]` of the cubic in `z` obtained by clearing
/// denominators: `-i z (z - e^{i rho})(z + e^{-i rho}) - r^2 (z + lambda i)^2`.
pub fn end_cubic_coefficients(p: &GeometricParams) -> [Complex64; 4] {
    let s = p.sin_rho();
    let r2 = p.r * p.r;
    let l = p.lambda;
    [
        Complex64::new(l * l * r2, 0.0),
        Complex64::new(0.0, 1.0 - 2.0 * l * r2),
        Complex64::new(-(2.0 * s + r2), 0.0),
        Complex64::new(0.0, -1.0),
    ]
}

pub fn eval_cubic(c: &[Complex64; 4], z: Complex64) -> Complex64 {
    ((c[3] * z + c[2]) * z + c[1]) * z + c[0]
}

fn cardano(p: &GeometricParams) -> (CardanoIntermediates, f64) {
    let s = p.sin_rho();
    let r2 = p.r * p.r;
    let big_r = -2.0 * s - r2;
    let sigma = 1.0 - 2.0 * p.lambda * r2;
    let tau = -p.lambda * p.lambda * r2;
    let pp = sigma - big_r * big_r / 3.0;
    let q = 2.0 * big_r.powi(3) / 27.0 - sigma * big_r / 3.0 + tau;
    let delta = pp.powi(3) / 27.0 + q * q / 4.0;
    let (u, v) = if delta >= 0.0 {
        let sd = delta.sqrt();
        let u = (-0.5 * q + sd).cbrt();
        let v = if u != 0.0 { -pp / (3.0 * u) } else { (-0.5 * q - sd).cbrt() };
        (u, v)
    } else {
        (f64::NAN, f64::NAN)
    };
    (
        CardanoIntermediates { big_r, sigma, tau, p: pp, q, u, v },
        delta,
    )
}

/// Roots of a complex cubic by Durand-Kerner iteration and Newton polishing.
pub fn cubic_roots_generic(c: &[Complex64; 4]) -> [Complex64; 3] {
    let lead = c[3];
    let m = [c[0] / lead, c[1] / lead, c[2] / lead];
    let monic = |z: Complex64| ((z + m[2]) * z + m[1]) * z + m[0];
    let seed = Complex64::new(0.4, 0.9);
    let mut z = [seed, seed * seed, seed * seed * seed];
    for _ in 0..500 {
        let mut change: f64 = 0.0;
        for i in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = monic(z[i]) / den;
            z[i] -= step;
            change = change.max(step.norm());
        }
        if change < 1e-16 {
            break;
        }
    }
    let deriv = |z: Complex64| (z * 3.0 + m[2] * 2.0) * z + m[1];
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*zi);
            if d.norm() > 0.0 {
                *zi -= monic(*zi) / d;
            }
        }
    }
    z
}

/// Classify three roots into (x with Re > 0, the pure-imaginary one).
fn classify(roots: [Complex64; 3]) -> Result<(Complex64, Complex64)> {
    let mut imag_idx = None;
    let mut best = f64::INFINITY;
    for (i, z) in roots.iter().enumerate() {
        let rel = z.re.abs() / z.norm().max(f64::MIN_POSITIVE);
        if rel < best {
            best = rel;
            imag_idx = Some(i);
        }
    }
    let i = imag_idx.unwrap();
    if best >= 1e-9 && roots[i].norm() > 1e-300 {
        return Err(Error::RootClassification(format!(
            "no pure-imaginary root within tolerance among {roots:?}"
        )));
    }
    let x = roots
        .iter()
        .enumerate()
        .filter(|(j, z)| *j != i && z.re > 0.0)
        .map(|(_, z)| *z)
        .next()
        .ok_or_else(|| {
            Error::RootClassification(format!("no root with positive real part in {roots:?}"))
        })?;
    Ok((x, roots[i]))
}

/// Solve the end-placement cubic.
pub fn solve_end_cubic(p: &GeometricParams) -> Result<EndConfiguration> {
    let (cardano, delta) = cardano(p);
    let in_region = p.in_supported_region();
    if p.r == 0.0 {
        return Ok(EndConfiguration {
            a: p.rho.cos(),
            b: p.rho.sin(),
            y: 0.0,
            y_cubic: 0.0,
            delta,
            cardano,
            used_fallback: false,
            in_supported_region: in_region,
            cardano_mismatch: false,
        });
    }
    if in_region && delta <= 0.0 {
        return Err(Error::NonPositiveDiscriminant { delta });
    }
    let y = imaginary_root_y(p)?;
    let coeffs = end_cubic_coefficients(p);
    let generic = cubic_roots_generic(&coeffs);

    if delta > 0.0 {
        let CardanoIntermediates { big_r, u, v, .. } = cardano;
        let a = (0.5 * 3f64.sqrt() * (u - v)).abs();
        let b = -0.5 * (u + v) - big_r / 3.0;
        let y_cubic = u + v - big_r / 3.0;
        let mut mismatch = false;
        if let Ok((xg, iyg)) = classify(generic) {
            let scale = 1.0 + xg.norm();
            mismatch = (xg - Complex64::new(a, b)).norm() > 1e-8 * scale
                || (iyg.im - y_cubic).abs() > 1e-8 * (1.0 + y_cubic.abs());
        }
        if a > 0.0 {
            return Ok(EndConfiguration {
                a,
                b,
                y,
                y_cubic,
                delta,
                cardano,
                used_fallback: false,
                in_supported_region: in_region,
                cardano_mismatch: mismatch,
            });
        }
    }

    let (x, iy) = classify(generic)?;
    Ok(EndConfiguration {
        a: x.re,
        b: x.im,
        y,
        y_cubic: iy.im,
        delta,
        cardano,
        used_fallback: true,
        in_supported_region: in_region,
        cardano_mismatch: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r0_at_zero_angle() {
        assert!((r0(0.0) - (0.2f64 * 1.04).sqrt() / 1.2).abs() < 1e-15);
    }

    #[test]
    fn limit_r_zero() {
        let p = GeometricParams::new(-0.3, 2.0, 0.0).unwrap();
        let e = solve_end_cubic(&p).unwrap();
        assert_eq!(e.a, (-0.3f64).cos());
        assert_eq!(e.b, (-0.3f64).sin());
        assert_eq!(e.y, 0.0);
    }
}

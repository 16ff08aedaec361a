//! Dormand-Prince 5(4) for complex states along straight segments of the
//! parameter plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

type C = Complex64;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OdeTolerance {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeTolerance {
    fn default() -> Self {
        OdeTolerance { rel_tol: 1e-12, abs_tol: 1e-14, max_steps: 20_000 }
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 5th minus 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn lin<const N: usize>(y: &[C; N], terms: &[(f64, &[C; N])], h: f64) -> [C; N] {
    let mut out = *y;
    for (w, k) in terms {
        for i in 0..N {
            out[i] += k[i] * (w * h);
        }
    }
    out
}

fn finite<const N: usize>(y: &[C; N]) -> bool {
    y.iter().all(|v| v.re.is_finite() && v.im.is_finite())
}

/// Integrate `dy/du = rhs(u, y)` from `u0` to `u1` along the straight segment.
///
/// Returns the final state and the number of accepted steps.
pub fn integrate_segment<const N: usize, F>(
    rhs: F,
    u0: C,
    u1: C,
    y0: [C; N],
    tol: &OdeTolerance,
) -> Result<([C; N], usize)>
where
    F: Fn(C, &[C; N]) -> [C; N],
{
    let du = u1 - u0;
    if du.norm() == 0.0 {
        return Ok((y0, 0));
    }
    // Real time t in [0, 1]; the chain rule contributes du.
    let g = |t: f64, y: &[C; N]| {
        let mut k = rhs(u0 + du * t, y);
        for v in k.iter_mut() {
            *v *= du;
        }
        k
    };
    let mut t = 0.0;
    let mut y = y0;
    let mut h = 1.0f64;
    let mut k1 = g(t, &y);
    if !finite(&k1) {
        return Err(Error::Mesh(format!("non-finite derivative at u = {u0}")));
    }
    let mut steps = 0usize;
    let mut tries = 0usize;
    while t < 1.0 {
        tries += 1;
        if tries > tol.max_steps {
            return Err(Error::Mesh(format!("ode step limit reached between {u0} and {u1}")));
        }
        if t + h > 1.0 {
            h = 1.0 - t;
        }
        let k2 = g(t + h / 5.0, &lin(&y, &[(A21, &k1)], h));
        let k3 = g(t + 3.0 * h / 10.0, &lin(&y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = g(t + 4.0 * h / 5.0, &lin(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
        let k5 = g(
            t + 8.0 * h / 9.0,
            &lin(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
        );
        let k6 = g(
            t + h,
            &lin(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
        );
        let y5 = lin(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
        let k7 = g(t + h, &y5);
        let mut err = 0.0f64;
        let ok = finite(&y5) && finite(&k7);
        if ok {
            for i in 0..N {
                let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
                let sc = tol.abs_tol + tol.rel_tol * y[i].norm().max(y5[i].norm());
                err = err.max(e.norm() / sc);
            }
        }
        if ok && err <= 1.0 {
            t += h;
            y = y5;
            k1 = k7;
            steps += 1;
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= fac;
        } else {
            let fac = if ok { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.25 };
            h *= fac;
            if h < 1e-14 {
                return Err(Error::Mesh(format!("ode step underflow between {u0} and {u1}")));
            }
        }
    }
    Ok((y, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_along_complex_segment() {
        let (y, _) = integrate_segment(
            |_u, y: &[C; 1]| [y[0]],
            C::new(0.0, 0.0),
            C::new(0.3, 1.2),
            [C::new(1.0, 0.0)],
            &OdeTolerance::default(),
        )
        .unwrap();
        let exact = C::new(0.3, 1.2).exp();
        assert!((y[0] - exact).norm() < 1e-11);
    }
}

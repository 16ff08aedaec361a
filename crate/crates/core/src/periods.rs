//! Residues, period integrals and the balance functions `c1, c2, c3, c3_tilde`.
//!
//! All `c` values here are candidate values of `c^2`. Every half-line integral
//! is evaluated in a unit-interval substituted form; the raw forms are kept
//! for cross-checks only.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::param_algebra::{solve_end_cubic, EndConfiguration, GeometricParams};
use crate::quadrature::{
    integrate_adaptive, integrate_principal_value, integrate_tail, QuadratureConfig,
    QuadratureResult,
};
use crate::{Error, Result};

/// `sqrt(t (t^2 + 1 + 2 t sin rho))`.
pub fn f(t: f64, rho: f64) -> f64 {
    (t * (t * t + 1.0 + 2.0 * t * rho.sin())).sqrt()
}

/// `sqrt(t (t^2 + 1 - 2 t sin rho))`, i.e. `f(t, -rho)`.
pub fn f_tilde(t: f64, rho: f64) -> f64 {
    (t * (t * t + 1.0 - 2.0 * t * rho.sin())).sqrt()
}

/// Period vector picked up around the middle end `z = -i lambda`.
pub fn residue_middle_end(p: &GeometricParams, end: &EndConfiguration, c: f64) -> [f64; 3] {
    [0.0, c * PI * f(p.lambda, p.rho) / end.dist2_middle(p.lambda), 0.0]
}

/// Period vector picked up around either side end `x` or `-conj(x)`.
pub fn residue_side_end(p: &GeometricParams, end: &EndConfiguration, c: f64) -> Result<[f64; 3]> {
    if !(end.a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "side end needs Re x > 0, got a = {}",
            end.a
        )));
    }
    let cr = c * p.r;
    Ok([0.0, PI / (2.0 * end.a) * (cr + 1.0 / cr), 0.0])
}

/// `1/(r c1)`, the reciprocal form that stays finite as `c1` changes sign.
pub fn c1_reciprocal_over_r(p: &GeometricParams, end: &EndConfiguration) -> f64 {
    2.0 * end.a * f(p.lambda, p.rho) / end.dist2_middle(p.lambda) - p.r
}

pub fn c1_from_end(p: &GeometricParams, end: &EndConfiguration) -> f64 {
    1.0 / (p.r * c1_reciprocal_over_r(p, end))
}

pub fn c1(p: &GeometricParams) -> Result<f64> {
    Ok(c1_from_end(p, &solve_end_cubic(p)?))
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0))
        .collect()
}

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, k| acc * x + k)
}

/// Quotient of an anti-palindromic `e(T)` (ascending, odd length) by `(T - 1)`.
///
/// The quotient is palindromic with `q_k = -(e_0 + ... + e_k)`. Summing from
/// the low end and mirroring keeps the small outer coefficients exact when
/// the middle ones are many orders of magnitude larger.
fn divide_by_t_minus_one(e: &[f64]) -> Vec<f64> {
    let n = e.len() - 1;
    let mut q = vec![0.0; n];
    let mut acc = 0.0;
    for k in 0..n / 2 {
        acc -= e[k];
        q[k] = acc;
        q[n - 1 - k] = acc;
    }
    q
}

/// The four quadratics in `T = t^2` that appear in the `I1`, `I2` integrands.
///
/// `n1 = T^2 + 2 lambda s T + lambda^2`, `d1 = (lambda + b T)^2 + a^2 T^2`,
/// `n2 = lambda^2 T^2 + 2 lambda s T + 1`, `d2 = (lambda T + b)^2 + a^2`.
/// They satisfy `n1(T) = T^2 n2(1/T)` and `d1(T) = T^2 d2(1/T)`.
#[derive(Clone, Debug)]
struct IKernel {
    lambda: f64,
    n1: [f64; 3],
    d1: [f64; 3],
    n2: [f64; 3],
    d2: [f64; 3],
    /// `(n1 d2^2 - T^2 n2 d1^2) / (T - 1)`.
    q_i2: Vec<f64>,
    /// `(d1^2 n1 - T^2 d2^2 n2) / (T - 1)`.
    q_i1: Vec<f64>,
}

/// Both numerator differences are anti-palindromic of degree 8; enforcing
/// `e_k = -e_{8-k}` exactly makes `e(1) = 0` hold in floating point.
fn antisymmetrize(mut e: Vec<f64>) -> Vec<f64> {
    let n = e.len() - 1;
    for k in 0..=n / 2 {
        let v = 0.5 * (e[k] - e[n - k]);
        e[k] = v;
        e[n - k] = -v;
    }
    e
}

impl IKernel {
    fn new(p: &GeometricParams, end: &EndConfiguration) -> Self {
        let l = p.lambda;
        let s = p.sin_rho();
        let (a, b) = (end.a, end.b);
        let m2 = a * a + b * b;
        let n1 = [l * l, 2.0 * l * s, 1.0];
        let d1 = [l * l, 2.0 * l * b, m2];
        let n2 = [1.0, 2.0 * l * s, l * l];
        let d2 = [m2, 2.0 * l * b, l * l];
        let t2 = [0.0, 0.0, 1.0];

        // n1 d2^2 - T^2 n2 d1^2 expanded by hand: the lambda^6 terms cancel
        // exactly, which the numeric product would only do to rounding.
        let l2 = l * l;
        let l4 = l2 * l2;
        let e0 = l2 * m2 * m2;
        let e1 = 2.0 * l * m2 * (2.0 * b * l2 + m2 * s);
        let e2 = 4.0 * b * b * l4 + 8.0 * b * l2 * m2 * s + l4 * (2.0 * m2 - 1.0) + m2 * m2;
        let e3 = 2.0
            * l
            * (4.0 * b * b * l2 * s + l4 * (2.0 * b - s) - 2.0 * b * l2 + 2.0 * b * m2
                + 2.0 * l2 * m2 * s);
        let e = vec![e0, e1, e2, e3, 0.0, -e3, -e2, -e1, -e0];
        let q_i2 = divide_by_t_minus_one(&e);

        let lhs = poly_mul(&n1, &poly_mul(&d1, &d1));
        let rhs = poly_mul(&t2, &poly_mul(&n2, &poly_mul(&d2, &d2)));
        let q_i1 = divide_by_t_minus_one(&antisymmetrize(poly_sub(&lhs, &rhs)));

        IKernel { lambda: l, n1, d1, n2, d2, q_i2, q_i1 }
    }

    fn parts(&self, tt: f64) -> (f64, f64, f64, f64) {
        (
            poly_eval(&self.n1, tt),
            poly_eval(&self.d1, tt),
            poly_eval(&self.n2, tt),
            poly_eval(&self.d2, tt),
        )
    }

    /// Integrand of `I1` in the `(1 - t^2)`-weighted form.
    ///
    /// The bracket `n2^{-1/2}/d2 - T n1^{-1/2}/d1` equals
    /// `(d1 sqrt(n1) - T d2 sqrt(n2)) / (d1 d2 sqrt(n1 n2))`, and the
    /// numerator is rationalised so the factor `(T - 1)` comes out exactly.
    fn i1_integrand(&self, t: f64) -> f64 {
        let tt = t * t;
        let (n1, d1, n2, d2) = self.parts(tt);
        let (sn1, sn2) = (n1.sqrt(), n2.sqrt());
        let den = d1 * d2 * sn1 * sn2 * (d1 * sn1 + tt * d2 * sn2);
        let one_minus = 1.0 - tt;
        // bracket * (1 - T) = (T - 1) q (1 - T) / den
        -one_minus * one_minus * poly_eval(&self.q_i1, tt) / den
    }

    /// Integrand of `I2` with the removable `1/(1 - t^2)` singularity divided out.
    fn i2_integrand(&self, t: f64) -> f64 {
        let tt = t * t;
        let (n1, d1, n2, d2) = self.parts(tt);
        let aa = n1.sqrt() / d1;
        let cc = n2.sqrt() / d2;
        -poly_eval(&self.q_i2, tt) / (d1 * d1 * d2 * d2 * (aa + tt * cc))
    }

    fn i1_prefactor(&self) -> f64 {
        2.0 * self.lambda.powf(1.5)
    }

    fn i2_prefactor(&self) -> f64 {
        2.0 * self.lambda.sqrt()
    }
}

/// `I1` from the `(1 - t^2)`-weighted unit-interval form.
pub fn i1(p: &GeometricParams, end: &EndConfiguration, cfg: &QuadratureConfig) -> QuadratureResult<f64> {
    let k = IKernel::new(p, end);
    integrate_adaptive(|t| k.i1_integrand(t), 0.0, 1.0, cfg).scale(k.i1_prefactor())
}

/// `I1` from the alternative split into `lambda`-proportional and constant parts.
pub fn i1_split_form(
    p: &GeometricParams,
    end: &EndConfiguration,
    cfg: &QuadratureConfig,
) -> QuadratureResult<f64> {
    let (a, b, l, s) = (end.a, end.b, p.lambda, p.sin_rho());
    let integrand = |t: f64| {
        let tt = t * t;
        let e1 = (tt + b).powi(2) + a * a;
        let e2 = (1.0 + b * tt).powi(2) + a * a * tt * tt;
        let root = (tt * tt + 2.0 * tt * s + 1.0).sqrt();
        (l * (1.0 / e1 + tt * tt / e2) - (tt / e1 + tt / e2)) / root
    };
    integrate_adaptive(integrand, 0.0, 1.0, cfg).scale(2.0)
}

/// `I1` straight from its half-line definition, for cross-checks.
pub fn i1_raw(p: &GeometricParams, end: &EndConfiguration, cfg: &QuadratureConfig) -> QuadratureResult<f64> {
    let (a, b, l, rho) = (end.a, end.b, p.lambda, p.rho);
    crate::quadrature::integrate_halfline_split(
        |t| (l - t) / (f(t, rho) * ((t + b).powi(2) + a * a)),
        cfg,
    )
}

/// `I2` from the singularity-free unit-interval form.
pub fn i2(p: &GeometricParams, end: &EndConfiguration, cfg: &QuadratureConfig) -> QuadratureResult<f64> {
    // I2 decays like 1/lambda; integrate lambda * I2 so the absolute
    // tolerance never dominates.
    let k = IKernel::new(p, end);
    let w = k.i2_prefactor() * p.lambda;
    integrate_adaptive(|t| k.i2_integrand(t) * w, 0.0, 1.0, cfg).scale(1.0 / p.lambda)
}

/// `I2` as a Cauchy principal value of the raw half-line integrand.
pub fn i2_principal_value(
    p: &GeometricParams,
    end: &EndConfiguration,
    cfg: &QuadratureConfig,
) -> QuadratureResult<f64> {
    let (a, b, l, rho) = (end.a, end.b, p.lambda, p.rho);
    let g = |t: f64| f(t, rho) / ((t - l) * ((t + b).powi(2) + a * a));
    let near = integrate_principal_value(g, 0.0, 2.0 * l, l, cfg);
    let far = integrate_tail(g, 2.0 * l, cfg);
    near.combine(far)
}

/// `J1` from its unit-interval form.
pub fn j1(p: &GeometricParams, end: &EndConfiguration, cfg: &QuadratureConfig) -> QuadratureResult<f64> {
    let (a, b, l, s) = (end.a, end.b, p.lambda, p.sin_rho());
    let integrand = |t: f64| {
        let tt = t * t;
        let first = 2.0 * (tt + l)
            / ((tt * tt - 2.0 * tt * s + 1.0).sqrt() * ((tt - b).powi(2) + a * a));
        let second = t.sqrt() * (1.0 + l * t)
            / ((tt - 2.0 * t * s + 1.0).sqrt() * ((1.0 - b * t).powi(2) + a * a * tt));
        first + second
    };
    integrate_adaptive(integrand, 0.0, 1.0, cfg)
}

/// `J2` from its unit-interval form.
pub fn j2(p: &GeometricParams, end: &EndConfiguration, cfg: &QuadratureConfig) -> QuadratureResult<f64> {
    let (a, b, l, s) = (end.a, end.b, p.lambda, p.sin_rho());
    let integrand = |t: f64| {
        let tt = t * t;
        let first = (t * (tt - 2.0 * t * s + 1.0)).sqrt() / ((t + l) * ((t - b).powi(2) + a * a));
        let second = 2.0 * (tt * tt - 2.0 * tt * s + 1.0).sqrt()
            / ((1.0 + l * tt) * ((1.0 - b * tt).powi(2) + a * a * tt * tt));
        (first + second) * l.sqrt()
    };
    // J2 decays like lambda^{-1/2}; same normalisation as for I2.
    integrate_adaptive(integrand, 0.0, 1.0, cfg).scale(1.0 / l.sqrt())
}

/// `J1` and `J2` straight from their half-line definitions.
pub fn j_raw(
    p: &GeometricParams,
    end: &EndConfiguration,
    cfg: &QuadratureConfig,
) -> (QuadratureResult<f64>, QuadratureResult<f64>) {
    let (a, b, l, rho) = (end.a, end.b, p.lambda, p.rho);
    let q = |t: f64| (t - b).powi(2) + a * a;
    let r1 = crate::quadrature::integrate_halfline_split(|t| (t + l) / (f_tilde(t, rho) * q(t)), cfg);
    let r2 = crate::quadrature::integrate_halfline_split(|t| f_tilde(t, rho) / ((t + l) * q(t)), cfg);
    (r1, r2)
}

/// The four period integrals at one parameter point.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PeriodIntegrals {
    pub i1: QuadratureResult<f64>,
    pub i2: QuadratureResult<f64>,
    pub j1: QuadratureResult<f64>,
    pub j2: QuadratureResult<f64>,
    /// `pi f(lambda) / ((lambda + b)^2 + a^2)`, the half-residue from the indentation.
    pub half_residue: f64,
}

impl PeriodIntegrals {
    pub fn compute(p: &GeometricParams, end: &EndConfiguration, cfg: &QuadratureConfig) -> Self {
        PeriodIntegrals {
            i1: i1(p, end, cfg),
            i2: i2(p, end, cfg),
            j1: j1(p, end, cfg),
            j2: j2(p, end, cfg),
            half_residue: PI * f(p.lambda, p.rho) / end.dist2_middle(p.lambda),
        }
    }

    pub fn c2(&self) -> f64 {
        self.i1.value / self.i2.value
    }

    pub fn c3(&self) -> f64 {
        self.j1.value / (self.half_residue - self.j2.value)
    }

    /// Complex closure mismatch for a given `c^2`: the real part is the first
    /// condition cross-multiplied, the imaginary part the second.
    pub fn closure_mismatch(&self, c_sq: f64) -> Complex64 {
        Complex64::new(
            self.i1.value - c_sq * self.i2.value,
            c_sq * (self.half_residue - self.j2.value) - self.j1.value,
        )
    }
}

pub fn c3_tilde_from(p: &GeometricParams, end: &EndConfiguration, j1: f64, j2: f64) -> f64 {
    let r = p.r;
    (PI - 2.0 * end.a * j1 * r) / (r * (2.0 * end.a * j2 - PI * r))
}

pub fn c2(p: &GeometricParams, cfg: &QuadratureConfig) -> Result<f64> {
    let end = solve_end_cubic(p)?;
    Ok(i1(p, &end, cfg).value / i2(p, &end, cfg).value)
}

pub fn c3(p: &GeometricParams, cfg: &QuadratureConfig) -> Result<f64> {
    let end = solve_end_cubic(p)?;
    let half = PI * f(p.lambda, p.rho) / end.dist2_middle(p.lambda);
    Ok(j1(p, &end, cfg).value / (half - j2(p, &end, cfg).value))
}

pub fn c3_tilde(p: &GeometricParams, cfg: &QuadratureConfig) -> Result<f64> {
    let end = solve_end_cubic(p)?;
    Ok(c3_tilde_from(p, &end, j1(p, &end, cfg).value, j2(p, &end, cfg).value))
}

/// Closure mismatch at López-Ros parameter `c > 0`.
pub fn closure_mismatch(p: &GeometricParams, c: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    let end = solve_end_cubic(p)?;
    Ok(PeriodIntegrals::compute(p, &end, cfg).closure_mismatch(c * c))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodFlags {
    pub c1_pole: bool,
    pub c2_pole: bool,
    pub c3_pole: bool,
    pub c3_tilde_pole: bool,
    pub c1_negative: bool,
    /// The principal-value and singularity-free forms of `I2` disagree.
    pub i2_inconsistent: bool,
    pub quadrature_unconverged: bool,
    pub outside_supported_region: bool,
}

impl PeriodFlags {
    pub fn any_pole(&self) -> bool {
        self.c1_pole || self.c2_pole || self.c3_pole || self.c3_tilde_pole
    }

    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let items = [
            (self.c1_pole, "c1_pole"),
            (self.c2_pole, "c2_pole"),
            (self.c3_pole, "c3_pole"),
            (self.c3_tilde_pole, "c3t_pole"),
            (self.c1_negative, "c1_neg"),
            (self.i2_inconsistent, "i2_mismatch"),
            (self.quadrature_unconverged, "quad_unconverged"),
            (self.outside_supported_region, "best_effort"),
        ];
        for (on, label) in items {
            if on {
                out.push(label);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DiagnosticOptions {
    /// Also evaluate `I2` as a principal value and compare.
    pub cross_check_pv: bool,
    /// Relative agreement required between the two `I2` evaluations.
    pub pv_tolerance: f64,
}

impl Default for DiagnosticOptions {
    fn default() -> Self {
        DiagnosticOptions { cross_check_pv: false, pv_tolerance: 1e-8 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodDiagnostics {
    pub params: GeometricParams,
    pub end: EndConfiguration,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c3_tilde: f64,
    /// López-Ros parameter used for residues and the mismatch (`sqrt(c1)` when positive).
    pub c_used: f64,
    pub residue_middle: [f64; 3],
    pub residue_side: [f64; 3],
    pub residue_side_mirror: [f64; 3],
    pub integrals: PeriodIntegrals,
    pub i2_pv: Option<QuadratureResult<f64>>,
    pub closure_mismatch: Complex64,
    pub flags: PeriodFlags,
}

fn is_pole(num: f64, den: f64) -> bool {
    !(num / den).is_finite() || den.abs() <= 1e-12 * num.abs()
}

impl PeriodDiagnostics {
    pub fn compute(
        p: &GeometricParams,
        cfg: &QuadratureConfig,
        opts: &DiagnosticOptions,
    ) -> Result<Self> {
        let end = solve_end_cubic(p)?;
        Self::compute_with_end(p, &end, cfg, opts)
    }

    pub fn compute_with_end(
        p: &GeometricParams,
        end: &EndConfiguration,
        cfg: &QuadratureConfig,
        opts: &DiagnosticOptions,
    ) -> Result<Self> {
        let ints = PeriodIntegrals::compute(p, end, cfg);
        let recip = c1_reciprocal_over_r(p, end);
        let c1v = 1.0 / (p.r * recip);
        let c2v = ints.c2();
        let c3v = ints.c3();
        let c3t = c3_tilde_from(p, end, ints.j1.value, ints.j2.value);

        let mut flags = PeriodFlags {
            c1_pole: is_pole(1.0, p.r * recip),
            c2_pole: is_pole(ints.i1.value, ints.i2.value),
            c3_pole: is_pole(ints.j1.value, ints.half_residue - ints.j2.value),
            c3_tilde_pole: is_pole(
                PI - 2.0 * end.a * ints.j1.value * p.r,
                2.0 * end.a * ints.j2.value - PI * p.r,
            ),
            c1_negative: c1v < 0.0,
            outside_supported_region: !p.in_supported_region(),
            quadrature_unconverged: !(ints.i1.converged
                && ints.i2.converged
                && ints.j1.converged
                && ints.j2.converged),
            ..Default::default()
        };

        let i2_pv = if opts.cross_check_pv {
            let pv = i2_principal_value(p, end, cfg);
            let scale = ints.i2.value.abs().max(pv.value.abs()).max(1e-300);
            flags.i2_inconsistent = (pv.value - ints.i2.value).abs() > opts.pv_tolerance * scale;
            Some(pv)
        } else {
            None
        };

        let c_used = if c1v > 0.0 && c1v.is_finite() { c1v.sqrt() } else { f64::NAN };
        let (side, mirror) = if c_used.is_finite() {
            let v = residue_side_end(p, end, c_used)?;
            (v, v)
        } else {
            ([f64::NAN; 3], [f64::NAN; 3])
        };
        Ok(PeriodDiagnostics {
            params: *p,
            end: *end,
            c1: c1v,
            c2: c2v,
            c3: c3v,
            c3_tilde: c3t,
            c_used,
            residue_middle: residue_middle_end(p, end, c_used),
            residue_side: side,
            residue_side_mirror: mirror,
            integrals: ints,
            i2_pv,
            closure_mismatch: ints.closure_mismatch(c_used * c_used),
            flags,
        })
    }
}

/// Constants bounding `a` and `b` over the supported region.
pub const A_MIN: f64 = 0.8464;
pub const A_MAX: f64 = 1.03;
pub const B_MIN: f64 = -0.0764;
/// Sharper values available at the `lambda = 1`, `r = r0` corner.
pub const A_MIN_SHARP: f64 = 0.849;
pub const B_MIN_SHARP: f64 = -0.0375;

pub fn j1_min(lambda: f64) -> f64 {
    0.7669 + 1.6981 * lambda
}

pub fn j1_max(lambda: f64) -> f64 {
    0.9963 + 2.4499 * lambda
}

/// `1 - sqrt(lambda) atan(1/sqrt(lambda))`, with a series for large lambda.
pub fn one_minus_sqrt_atan(lambda: f64) -> f64 {
    if lambda > 50.0 {
        let x = 1.0 / lambda;
        let mut sum = 0.0;
        let mut pow = x;
        for k in 1..14 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * pow / (2 * k + 1) as f64;
            pow *= x;
        }
        sum
    } else {
        1.0 - lambda.sqrt() * (1.0 / lambda.sqrt()).atan()
    }
}

pub fn j2_min(lambda: f64) -> f64 {
    let sl = lambda.sqrt();
    -0.2 + (0.6002 * lambda + 1.88) * one_minus_sqrt_atan(lambda)
        + (0.74 / lambda + 2.0) * sl.atan() / sl
        - 0.74 / lambda
}

pub fn j2_max(lambda: f64) -> f64 {
    let sl = lambda.sqrt();
    -0.46 + (1.38 * lambda + 3.08) * one_minus_sqrt_atan(lambda) + 2.006 * sl.atan() / sl
}

/// Open interval containing `1/(r c1)` over the supported region.
pub fn c1_reciprocal_bounds(p: &GeometricParams) -> (f64, f64) {
    let fl = f(p.lambda, p.rho);
    let l = p.lambda;
    let lo = 2.0 * A_MIN * fl / (l * l + A_MAX * A_MAX) - p.r;
    let hi = 2.0 * A_MAX * fl / ((l + B_MIN).powi(2) + A_MIN * A_MIN) - p.r;
    (lo, hi)
}

/// Open interval containing `1/(r c3_tilde)` over the supported region.
pub fn c3_tilde_reciprocal_bounds(p: &GeometricParams) -> (f64, f64) {
    let (l, r) = (p.lambda, p.r);
    let lo = (2.0 * A_MIN * j2_min(l) - PI * r) / (PI - 2.0 * A_MIN * j1_min(l) * r);
    let hi = (2.0 * A_MAX * j2_max(l) - PI * r) / (PI - 2.0 * A_MAX * j1_max(l) * r);
    (lo, hi)
}

/// Turns bounds on `1/(r c)` into bounds on `c`; a nonpositive lower
/// reciprocal bound leaves `c` unbounded above.
pub fn c_bounds_from_reciprocal(r: f64, (lo, hi): (f64, f64)) -> (f64, f64) {
    let c_lo = if hi > 0.0 { 1.0 / (r * hi) } else { f64::NAN };
    let c_hi = if lo > 0.0 { 1.0 / (r * lo) } else { f64::INFINITY };
    (c_lo, c_hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetric_difference_vanishes_at_one() {
        let p = GeometricParams::new((-0.05f64).asin(), 1.3, 0.2).unwrap();
        let end = solve_end_cubic(&p).unwrap();
        let k = IKernel::new(&p, &end);
        // Q must reproduce e(T)/(T-1) away from T = 1.
        for &tt in &[0.0, 0.3, 0.7, 0.95] {
            let (n1, d1, n2, d2) = k.parts(tt);
            let e = n1 * d2 * d2 - tt * tt * n2 * d1 * d1;
            let q = poly_eval(&k.q_i2, tt);
            assert!((e - (tt - 1.0) * q).abs() <= 1e-12 * e.abs().max(1.0));
        }
    }

    #[test]
    fn series_matches_direct_near_switch() {
        let l: f64 = 50.0;
        let direct = 1.0 - l.sqrt() * (1.0 / l.sqrt()).atan();
        assert!((one_minus_sqrt_atan(50.0) - direct).abs() < 1e-14);
        let l2: f64 = 50.5;
        let direct2 = 1.0 - l2.sqrt() * (1.0 / l2.sqrt()).atan();
        assert!((one_minus_sqrt_atan(l2) - direct2).abs() < 1e-12);
    }
}

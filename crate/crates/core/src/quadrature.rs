//! Adaptive Gauss-Kronrod integration, half-line splitting and Cauchy
//! principal values.
//!
//! Every finite interval is first pulled back through the cubic map
//! `t = lo + (hi - lo) * (3s^2 - 2s^3)`, whose Jacobian vanishes at both ends.
//! Inverse square-root endpoint singularities become bounded under this map,
//! so the plain G7/K15 pair converges on them without special casing.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of bisections applied to any single panel.
    pub max_depth: usize,
    /// Hard cap on the number of live panels.
    pub max_panels: usize,
    /// Principal-value excision half-widths, as fractions of the interval length.
    pub pv_excision: Vec<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_depth: 48,
            max_panels: 4000,
            pv_excision: (0..=20).map(|k| 0.125 * 0.5f64.powi(k)).collect(),
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(rel_tol: f64, abs_tol: f64) -> Self {
        QuadratureConfig {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(crate::Error::InvalidParameter(
                "quadrature tolerances must be positive".into(),
            ));
        }
        let seq = &self.pv_excision;
        if seq.is_empty() || seq[0] <= 0.0 || seq.windows(2).any(|w| !(w[1] < w[0] && w[1] > 0.0))
        {
            return Err(crate::Error::InvalidParameter(
                "excision sequence must be strictly decreasing and positive".into(),
            ));
        }
        Ok(())
    }

    fn tighter(&self, factor: f64) -> Self {
        QuadratureConfig {
            rel_tol: (self.rel_tol * factor).max(1e-15),
            abs_tol: (self.abs_tol * factor).max(1e-300),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub pv_used: bool,
    pub converged: bool,
}

impl<T: QuadValue> QuadratureResult<T> {
    /// Sum of two results, with errors added.
    pub fn combine(self, other: Self) -> Self {
        QuadratureResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            pv_used: self.pv_used || other.pv_used,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, k: f64) -> Self {
        QuadratureResult {
            value: self.value * k,
            error_estimate: self.error_estimate * k.abs(),
            ..self
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel on [a, b]: (kronrod, |kronrod - gauss|).
fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k = k + s * WGK[j];
        if j % 2 == 1 {
            g = g + s * WG[j / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    (k, (k - g).magnitude())
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    depth: usize,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Neumaier-compensated sum in a fixed (left-to-right) order.
fn compensated_sum<T: QuadValue>(values: impl Iterator<Item = T>) -> T {
    let mut sum = T::default();
    let mut comp = T::default();
    for v in values {
        let t = sum + v;
        if sum.magnitude() >= v.magnitude() {
            comp = comp + ((sum - t) + v);
        } else {
            comp = comp + ((v - t) + sum);
        }
        sum = t;
    }
    sum + comp
}

/// Adaptive integral of `f` over `[lo, hi]`.
pub fn integrate_adaptive<T, F>(mut f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> QuadratureResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if lo == hi {
        return QuadratureResult {
            value: T::default(),
            error_estimate: 0.0,
            evaluations: 0,
            pv_used: false,
            converged: true,
        };
    }
    let len = hi - lo;
    let mut evals = 0usize;
    let mut g = |s: f64| {
        evals += 1;
        let w = 6.0 * s * (1.0 - s);
        if w == 0.0 {
            return T::default();
        }
        let t = lo + len * s * s * (3.0 - 2.0 * s);
        f(t) * (w * len)
    };

    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel<T>> = Vec::new();
    let (v, e) = gk15(&mut g, 0.0, 1.0);
    heap.push(Panel { a: 0.0, b: 1.0, value: v, err: e, depth: 0 });
    let mut total = v;
    let mut total_err = e;
    let mut converged = true;

    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.magnitude());
        if total_err <= tol || !total_err.is_finite() && !total.is_finite_value() {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= cfg.max_depth || heap.len() + done.len() >= cfg.max_panels {
            converged = false;
            done.push(worst);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&mut g, worst.a, mid);
        let (v2, e2) = gk15(&mut g, mid, worst.b);
        total = total - worst.value + v1 + v2;
        total_err = total_err - worst.err + e1 + e2;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1, depth: worst.depth + 1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2, depth: worst.depth + 1 });
    }

    let mut panels: Vec<Panel<T>> = heap.into_vec();
    panels.extend(done);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = compensated_sum(panels.iter().map(|p| p.value));
    let error_estimate = panels.iter().map(|p| p.err).sum::<f64>();
    let tol = cfg.abs_tol.max(cfg.rel_tol * value.magnitude());
    QuadratureResult {
        value,
        error_estimate,
        evaluations: evals,
        pv_used: false,
        converged: converged && error_estimate <= tol && value.is_finite_value(),
    }
}

/// Integral over `(0, inf)` via `t -> t^2` on `(0, 1]` and `t -> t^-2` on `[1, inf)`.
pub fn integrate_halfline_split<T, F>(mut f: F, cfg: &QuadratureConfig) -> QuadratureResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let half = QuadratureConfig { abs_tol: 0.5 * cfg.abs_tol, ..cfg.clone() };
    let inner = integrate_adaptive(|t| f(t * t) * (2.0 * t), 0.0, 1.0, &half);
    let outer = integrate_adaptive(
        |t| {
            let it = 1.0 / t;
            f(it * it) * (2.0 * it * it * it)
        },
        0.0,
        1.0,
        &half,
    );
    inner.combine(outer)
}

/// Integral over `(start, inf)` by shifting to the half-line split.
pub fn integrate_tail<T, F>(mut f: F, start: f64, cfg: &QuadratureConfig) -> QuadratureResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_halfline_split(|t| f(start + t), cfg)
}

/// Cauchy principal value of `f` on `[lo, hi]` with a simple pole at `pole`.
///
/// Symmetric excisions `[pole - eps, pole + eps]` are removed for the
/// configured sequence of `eps`, and the excised integrals are extrapolated
/// to `eps = 0` with a three-point fit in `eps` and `eps^3` (the even powers
/// cancel under symmetric excision).
pub fn integrate_principal_value<T, F>(
    mut f: F,
    lo: f64,
    hi: f64,
    pole: f64,
    cfg: &QuadratureConfig,
) -> QuadratureResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    assert!(lo < pole && pole < hi, "pole must lie strictly inside the interval");
    let len = hi - lo;
    let room = (pole - lo).min(hi - pole);
    let inner_cfg = cfg.tighter(1e-2);
    let mut eps = Vec::new();
    let mut vals: Vec<T> = Vec::new();
    let mut errs = Vec::new();
    let mut evals = 0usize;
    let mut all_converged = true;
    let mut best: Option<(T, f64)> = None;
    let mut prev: Option<T> = None;
    let mut converged = false;

    for &frac in &cfg.pv_excision {
        let e = frac * len;
        if e >= 0.5 * room {
            continue;
        }
        let left = integrate_adaptive(&mut f, lo, pole - e, &inner_cfg);
        let right = integrate_adaptive(&mut f, pole + e, hi, &inner_cfg);
        evals += left.evaluations + right.evaluations;
        all_converged &= left.converged && right.converged;
        eps.push(e);
        vals.push(left.value + right.value);
        errs.push(left.error_estimate + right.error_estimate);
        let n = vals.len();
        if n < 3 {
            continue;
        }
        let est = extrapolate3(
            [eps[n - 3], eps[n - 2], eps[n - 1]],
            [vals[n - 3], vals[n - 2], vals[n - 1]],
        );
        let quad_err = 10.0 * (errs[n - 3] + errs[n - 2] + errs[n - 1]);
        if let Some(p) = prev {
            let diff = (est - p).magnitude();
            let err = diff + quad_err;
            best = Some((est, err));
            if diff <= cfg.abs_tol.max(cfg.rel_tol * est.magnitude()) {
                converged = true;
                break;
            }
        }
        prev = Some(est);
    }

    let (value, error_estimate) = best.unwrap_or_else(|| {
        let v = vals.last().copied().unwrap_or_default();
        (v, f64::INFINITY)
    });
    QuadratureResult {
        value,
        error_estimate,
        evaluations: evals,
        pv_used: true,
        converged: converged && all_converged,
    }
}

/// Value at eps = 0 of `v(eps) = v0 + a eps + b eps^3` through three samples.
fn extrapolate3<T: QuadValue>(e: [f64; 3], v: [T; 3]) -> T {
    // Solve the 3x3 system by Cramer's rule on the weights of v.
    let m = [
        [1.0, e[0], e[0].powi(3)],
        [1.0, e[1], e[1].powi(3)],
        [1.0, e[2], e[2].powi(3)],
    ];
    let det3 = |a: [[f64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det3(m);
    // weight of v_i is the cofactor of (i, 0) / d
    let mut out = T::default();
    for i in 0..3 {
        let mut mi = m;
        for (k, row) in mi.iter_mut().enumerate() {
            row[0] = if k == i { 1.0 } else { 0.0 };
        }
        out = out + v[i] * (det3(mi) / d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_exact_for_polynomials() {
        let cfg = QuadratureConfig::default();
        for k in 0..12 {
            let r = integrate_adaptive(|t: f64| t.powi(k), 0.0, 1.0, &cfg);
            assert!((r.value - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn extrapolation_weights_sum_to_one() {
        let v = extrapolate3([0.1, 0.05, 0.025], [1.0, 1.0, 1.0]);
        assert!((v - 1.0f64).abs() < 1e-13);
        let lin = extrapolate3([0.1, 0.05, 0.025], [2.1, 2.05, 2.025]);
        assert!((lin - 2.0f64).abs() < 1e-13);
    }
}

//! Numerical checks of the quantitative estimates the construction relies on.
//!
//! A check passes only when its margin exceeds three times the numerical
//! error attached to it, so nothing passes on quadrature noise.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::param_algebra::{r0, rho_in_supported_range, solve_end_cubic, GeometricParams};
use crate::periods::{
    c1_reciprocal_bounds, c1_reciprocal_over_r, c3_tilde_from, c3_tilde_reciprocal_bounds, f,
    j1_max, j1_min, j2_max, j2_min, DiagnosticOptions, PeriodDiagnostics, A_MAX, A_MIN,
    A_MIN_SHARP, B_MIN, B_MIN_SHARP,
};
use crate::quadrature::{integrate_adaptive, integrate_halfline_split, QuadratureConfig, QuadratureResult};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The point lies outside the region where the estimate is claimed.
    OutOfRegion,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// Human-readable form of the inequality, e.g. `value > 0.7669`.
    pub claim: String,
    pub bound: f64,
    pub value: f64,
    pub error: f64,
    pub margin: f64,
    pub status: CheckStatus,
}

impl CheckEntry {
    fn judge(name: &str, claim: String, value: f64, bound: f64, error: f64, margin: f64) -> Self {
        let status = if margin.is_finite() && margin > 3.0 * error && margin > 0.0 {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckEntry { name: name.to_string(), claim, bound, value, error, margin, status }
    }

    /// `value > bound`.
    pub fn greater(name: &str, value: f64, bound: f64, error: f64) -> Self {
        Self::judge(name, format!("value > {bound}"), value, bound, error, value - bound)
    }

    /// `value < bound`.
    pub fn less(name: &str, value: f64, bound: f64, error: f64) -> Self {
        Self::judge(name, format!("value < {bound}"), value, bound, error, bound - value)
    }

    /// `value >= bound`, for closed bounds and for limits at the closed end of
    /// an open interval.
    pub fn at_least(name: &str, value: f64, bound: f64, error: f64) -> Self {
        let margin = value - bound;
        let status = if margin >= -3.0 * error { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckEntry {
            name: name.to_string(),
            claim: format!("value >= {bound}"),
            bound,
            value,
            error,
            margin,
            status,
        }
    }

    /// `value <= bound`.
    pub fn at_most(name: &str, value: f64, bound: f64, error: f64) -> Self {
        let mut e = Self::at_least(name, -value, -bound, error);
        e.claim = format!("value <= {bound}");
        e.value = value;
        e.bound = bound;
        e
    }

    /// `|value - target| <= rel_tol |target|`.
    pub fn near(name: &str, value: f64, target: f64, rel_tol: f64, error: f64) -> Self {
        let margin = rel_tol * target.abs() - (value - target).abs();
        Self::judge(
            name,
            format!("|value - {target}| <= {rel_tol} * |{target}|"),
            value,
            target,
            error,
            margin,
        )
    }

    fn out_of_region(name: &str, why: String) -> Self {
        CheckEntry {
            name: name.to_string(),
            claim: why,
            bound: f64::NAN,
            value: f64::NAN,
            error: 0.0,
            margin: f64::NAN,
            status: CheckStatus::OutOfRegion,
        }
    }

    fn with_context(mut self, ctx: &str) -> Self {
        self.name = format!("{} [{ctx}]", self.name);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport { suite: suite.to_string(), entries: Vec::new() }
    }

    /// True when no in-region check failed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == CheckStatus::Fail)
    }

    pub fn merge(mut self, other: VerificationReport) -> Self {
        if self.suite.is_empty() {
            self.suite = other.suite.clone();
        } else {
            self.suite = format!("{}+{}", self.suite, other.suite);
        }
        self.entries.extend(other.entries);
        self
    }

    pub fn find(&self, prefix: &str) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| e.name.starts_with(prefix)).collect()
    }

    /// One line per check.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<6} {:<58} {:>22} {:>12} {:>12}", "status", "check", "value", "margin", "error");
        for e in &self.entries {
            let tag = match e.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::OutOfRegion => "SKIP",
            };
            let _ = writeln!(
                out,
                "{tag:<6} {:<58} {:>22.15e} {:>12.3e} {:>12.3e}",
                e.name, e.value, e.margin, e.error
            );
        }
        let total = self.entries.len();
        let fails = self.failures().count();
        let skips = self.entries.iter().filter(|e| e.status == CheckStatus::OutOfRegion).count();
        let _ = writeln!(
            out,
            "suite {}: {} checks, {} passed, {} failed, {} out of region",
            self.suite,
            total,
            total - fails - skips,
            fails,
            skips
        );
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Tolerances for the fixed-interval integrals: tight enough that every error estimate
/// stays below `1e-10`.
pub fn suite_quadrature() -> QuadratureConfig {
    QuadratureConfig::with_tol(1e-13, 1e-15)
}

fn integral_check(
    name: &str,
    parts: &[&dyn Fn(f64) -> f64],
    bound: f64,
    greater: bool,
    cfg: &QuadratureConfig,
) -> CheckEntry {
    let mut total: Option<QuadratureResult<f64>> = None;
    for g in parts {
        let r = integrate_adaptive(|t| g(t), 0.0, 1.0, cfg);
        total = Some(match total {
            None => r,
            Some(t) => t.combine(r),
        });
    }
    let t = total.expect("at least one integrand");
    let err = t.error_estimate.max(f64::EPSILON * t.value.abs());
    if greater {
        CheckEntry::greater(name, t.value, bound, err)
    } else {
        CheckEntry::less(name, t.value, bound, err)
    }
}

/// Minimum of `lhs - rhs` (or `rhs - lhs`) over the open grid `k/(n+1)`.
fn pointwise_check(
    name: &str,
    lhs: &dyn Fn(f64) -> f64,
    rhs: &dyn Fn(f64) -> f64,
    greater: bool,
    n: usize,
) -> CheckEntry {
    let mut worst = f64::INFINITY;
    let mut at = (0.0, 0.0, 0.0);
    for k in 1..=n {
        let t = k as f64 / (n + 1) as f64;
        let (l, r) = (lhs(t), rhs(t));
        let m = if greater { l - r } else { r - l };
        if m < worst {
            worst = m;
            at = (t, l, r);
        }
    }
    let err = 4.0 * f64::EPSILON * (at.1.abs() + at.2.abs());
    let (value, bound) = (at.1, at.2);
    let claim = format!(
        "lhs {} rhs on {n} interior points; worst at t = {:.6}",
        if greater { ">" } else { "<" },
        at.0
    );
    let mut e = CheckEntry::judge(name, claim, value, bound, err, worst);
    e.margin = worst;
    e
}

fn endpoint_check(name: &str, lhs: f64, rhs: f64, greater: bool, strict: bool) -> CheckEntry {
    let (value, bound) = if greater { (lhs, rhs) } else { (-lhs, -rhs) };
    let err = 4.0 * f64::EPSILON * (lhs.abs() + rhs.abs());
    if strict {
        CheckEntry::greater(name, value, bound, err)
    } else {
        CheckEntry::at_least(name, value, bound, err)
    }
}

/// The twelve integral and pointwise estimates on `(0, 1)`.
pub fn integral_suite(cfg: &QuadratureConfig, grid_points: usize) -> VerificationReport {
    let mut rep = VerificationReport::new("lemma83");
    let n = grid_points.max(1);

    let ak1 = |t: f64| {
        let tt = t * t;
        2.0 * tt / ((tt * tt + 0.1 * tt + 1.0).sqrt() * (tt * tt + 0.15 * tt + 1.06))
    };
    let bk1 = |t: f64| t.sqrt() / ((t * t + 0.1 * t + 1.0).sqrt() * (1.0 + 0.15 * t + 1.06 * t * t));
    rep.entries.push(integral_check("integral > 0.7669", &[&ak1, &bk1], 0.7669, true, cfg));

    let ak2 = |t: f64| {
        let tt = t * t;
        2.0 / ((tt * tt + 0.1 * tt + 1.0).sqrt() * (tt * tt + 0.15 * tt + 1.06))
    };
    let bk2 = |t: f64| t.powf(1.5) / ((t * t + 0.1 * t + 1.0).sqrt() * (1.0 + 0.15 * t + 1.06 * t * t));
    rep.entries.push(integral_check("integral < 1.6981", &[&ak2, &bk2], 1.6981, false, cfg));

    let ak3 = |t: f64| {
        let tt = t * t;
        2.0 * tt / ((tt * tt + 1.0).sqrt() * (tt * tt + 0.7164))
    };
    let bk3 = |t: f64| t.sqrt() / ((t * t + 1.0).sqrt() * (1.0 + 0.7164 * t * t));
    rep.entries.push(integral_check("integral > 0.9963", &[&ak3, &bk3], 0.9963, true, cfg));

    let ak4 = |t: f64| {
        let tt = t * t;
        2.0 / ((tt * tt + 1.0).sqrt() * (tt * tt + 0.7164))
    };
    let bk4 = |t: f64| t.powf(1.5) / ((t * t + 1.0).sqrt() * (1.0 + 0.7164 * t * t));
    rep.entries.push(integral_check("integral < 2.4499", &[&ak4, &bk4], 2.4499, false, cfg));

    let lk5 = |t: f64| (t * t + 1.0).sqrt() / (t * t + 0.15 * t + 1.06);
    let rk5 = |t: f64| -0.3001 * t + 0.94;
    rep.entries.push(pointwise_check("above 0.94 - 0.3001 t pointwise", &lk5, &rk5, true, n));
    rep.entries.push(endpoint_check("above 0.94 - 0.3001 t endpoint t=0", lk5(0.0), rk5(0.0), true, true));
    rep.entries.push(endpoint_check("above 0.94 - 0.3001 t endpoint t=1", lk5(1.0), rk5(1.0), true, false));

    let lk6 = |t: f64| {
        let tt = t * t;
        (tt * tt + 1.0).sqrt() / (1.0 + 0.15 * tt + 1.06 * tt * tt)
    };
    let rk6 = |t: f64| -0.37 * t * t + 1.0;
    rep.entries.push(pointwise_check("above 1 - 0.37 t^2 pointwise", &lk6, &rk6, true, n));
    rep.entries.push(endpoint_check("above 1 - 0.37 t^2 endpoint t=0", lk6(0.0), rk6(0.0), true, false));
    rep.entries.push(endpoint_check("above 1 - 0.37 t^2 endpoint t=1", lk6(1.0), rk6(1.0), true, false));

    let lk7 = |t: f64| (t * t + 0.1 * t + 1.0).sqrt() / (t * t + 0.7164);
    let rk7 = |t: f64| -0.69 * t + 1.54;
    rep.entries.push(pointwise_check("below 1.54 - 0.69 t pointwise", &lk7, &rk7, false, n));
    rep.entries.push(endpoint_check("below 1.54 - 0.69 t endpoint t=0", lk7(0.0), rk7(0.0), false, false));
    rep.entries.push(endpoint_check("below 1.54 - 0.69 t endpoint t=1", lk7(1.0), rk7(1.0), false, false));

    let lk8 = |t: f64| {
        let tt = t * t;
        (tt * tt + 0.1 * tt + 1.0).sqrt() / (1.0 + 0.7164 * tt * tt)
    };
    let rk8 = |_t: f64| 1.003;
    rep.entries.push(pointwise_check("below 1.003 pointwise", &lk8, &rk8, false, n));
    rep.entries.push(endpoint_check("below 1.003 endpoint t=0", lk8(0.0), rk8(0.0), false, false));
    rep.entries.push(endpoint_check("below 1.003 endpoint t=1", lk8(1.0), rk8(1.0), false, false));

    let gk9 = |t: f64| {
        let tt = t * t;
        let first = 1.0 / ((tt * tt - 0.1 * tt + 1.0).sqrt() * ((tt - 0.1).powi(2) + 0.7164));
        let second = tt / ((tt * tt + 1.0).sqrt() * (1.0 + 1.06 * tt * tt));
        (first - second) * (1.0 - tt)
    };
    rep.entries.push(integral_check("integral < 0.764", &[&gk9], 0.764, false, cfg));

    let gk10 = |t: f64| {
        let tt = t * t;
        let t4 = tt * tt;
        (-0.15 - tt + 0.7222 * (1.0 + tt + t4)) * (t4 - 0.1 * tt + 1.0).sqrt()
            / ((1.0 + 1.06 * t4) * (t4 + 1.06))
    };
    rep.entries.push(integral_check("integral > 0.443", &[&gk10], 0.443, true, cfg));

    let ak11 = |t: f64| {
        let t4 = t.powi(4);
        (1.0 / (t4 + 1.06) + t4 / (1.0 + 1.06 * t4)) / (t4 + 1.0).sqrt()
    };
    let bk11 = |t: f64| {
        let tt = t * t;
        let t4 = tt * tt;
        -(tt / ((tt - 0.0764).powi(2) + 0.7164) + tt / ((1.0 - 0.0764 * tt).powi(2) + 0.7164 * t4))
            / (t4 - 0.1 * tt + 1.0).sqrt()
    };
    rep.entries.push(integral_check("integral > 0.3294", &[&ak11, &bk11], 0.3294, true, cfg));

    let lk12 = |t: f64| (1.0 - 0.1 * t + t * t).sqrt();
    let rk12 = |t: f64| 1.0 - 0.0946 * t + 0.473 * t * t;
    rep.entries.push(pointwise_check("above 1 - 0.0946 t + 0.473 t^2 pointwise", &lk12, &rk12, true, n));
    rep.entries.push(endpoint_check("above 1 - 0.0946 t + 0.473 t^2 endpoint t=0", lk12(0.0), rk12(0.0), true, false));
    rep.entries.push(endpoint_check("above 1 - 0.0946 t + 0.473 t^2 endpoint t=1", lk12(1.0), rk12(1.0), true, false));
    rep
}

/// Sample grid for the region estimates. `r` is given as fractions of `r0/lambda`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsGrid {
    pub sin_rho: Vec<f64>,
    pub lambda: Vec<f64>,
    pub r_frac: Vec<f64>,
}

impl Default for BoundsGrid {
    fn default() -> Self {
        BoundsGrid {
            sin_rho: vec![-0.01, -0.0075, -0.005, -0.0025, -0.0005],
            lambda: vec![1.0, 2.0, 5.0, 20.0, 100.0],
            r_frac: vec![0.02, 0.25, 0.5, 0.75, 1.0],
        }
    }
}

fn rel_err(q: &QuadratureResult<f64>) -> f64 {
    q.error_estimate / q.value.abs().max(f64::MIN_POSITIVE)
}

/// Region estimates on every grid point, plus the per-slice endpoint signs.
pub fn bounds_suite(grid: &BoundsGrid, cfg: &QuadratureConfig) -> VerificationReport {
    let mut rep = VerificationReport::new("bounds");
    for &s in &grid.sin_rho {
        let rho = s.asin();
        let ctx_s = format!("sin rho={s}");
        if !rho_in_supported_range(rho) {
            rep.entries.push(CheckEntry::out_of_region(
                "region",
                format!("sin rho = {s} lies outside [-0.01, 0); estimates not claimed"),
            ).with_context(&ctx_s));
            continue;
        }
        let rr0 = r0(rho);
        let tiny = 1e-14;

        // constants derived at lambda = 1
        let f1 = f(1.0, rho);
        let r_tilde = 2.0 * A_MIN * f1 / (1.0 + A_MAX * A_MAX);
        rep.entries.push(CheckEntry::greater("r_tilde at lambda=1 > 1.132", r_tilde, 1.132, tiny).with_context(&ctx_s));
        rep.entries.push(CheckEntry::greater("r_tilde exceeds r0", r_tilde, rr0, tiny).with_context(&ctx_s));
        let vk_const = A_MIN * f1 / (1.0 + A_MAX * A_MAX);
        rep.entries.push(CheckEntry::greater("a_min f(1) / (1 + a_max^2) > 0.566", vk_const, 0.566, tiny).with_context(&ctx_s));
        rep.entries.push(CheckEntry::less("r0 upper", rr0, 0.3808, tiny).with_context(&ctx_s));
        rep.entries.push(CheckEntry::greater("r0 lower", rr0, 0.38, tiny).with_context(&ctx_s));

        // sharper corner values
        if let Ok(p) = GeometricParams::new(rho, 1.0, rr0) {
            if let Ok(e) = solve_end_cubic(&p) {
                rep.entries.push(CheckEntry::at_least("corner a >= sharp a_min", e.a, A_MIN_SHARP, tiny).with_context(&ctx_s));
                rep.entries.push(CheckEntry::at_least("corner b >= sharp b_min", e.b, B_MIN_SHARP, tiny).with_context(&ctx_s));
            }
        }

        for &lambda in &grid.lambda {
            let ctx_l = format!("sin rho={s} lambda={lambda}");
            if lambda < 1.0 {
                rep.entries.push(CheckEntry::out_of_region("region", format!("lambda = {lambda} < 1")).with_context(&ctx_l));
                continue;
            }
            let thr = lambda * PI / (2.0 * A_MAX * j1_max(lambda));
            rep.entries.push(CheckEntry::greater("lambda pi / (2 a_max J1max) > 0.4425", thr, 0.4425, tiny).with_context(&ctx_l));

            // Endpoint signs of r c1 - r c3_tilde along the slice.
            for (cap_r, want_negative) in [(1e-4, true), (rr0 - 1e-6, false)] {
                let label = if want_negative { "balance sign at cap_r=1e-4" } else { "balance sign at cap_r=r0" };
                match GeometricParams::from_cap_r(rho, lambda, cap_r)
                    .and_then(|p| PeriodDiagnostics::compute(&p, cfg, &DiagnosticOptions::default()).map(|d| (p, d)))
                {
                    Ok((p, d)) => {
                        let diff = p.r * d.c1 - p.r * d.c3_tilde;
                        let err = 1e-9 * (p.r * d.c1).abs();
                        let e = if want_negative {
                            CheckEntry::less(label, diff, 0.0, err)
                        } else {
                            CheckEntry::greater(label, diff, 0.0, err)
                        };
                        rep.entries.push(e.with_context(&ctx_l));
                    }
                    Err(err) => rep.entries.push(
                        CheckEntry::judge(label, format!("evaluation failed: {err}"), f64::NAN, 0.0, 0.0, f64::NAN)
                            .with_context(&ctx_l),
                    ),
                }
            }

            for &fr in &grid.r_frac {
                let r = fr * rr0 / lambda;
                let ctx = format!("sin rho={s} lambda={lambda} r={r:.6e}");
                let p = match GeometricParams::new(rho, lambda, r) {
                    Ok(p) => p,
                    Err(e) => {
                        rep.entries.push(CheckEntry::out_of_region("region", e.to_string()).with_context(&ctx));
                        continue;
                    }
                };
                let d = match PeriodDiagnostics::compute(&p, cfg, &DiagnosticOptions::default()) {
                    Ok(d) => d,
                    Err(e) => {
                        rep.entries.push(
                            CheckEntry::judge("evaluation", e.to_string(), f64::NAN, 0.0, 0.0, f64::NAN).with_context(&ctx),
                        );
                        continue;
                    }
                };
                push_point_checks(&mut rep, &p, &d, &ctx);
            }
        }
    }
    rep
}

fn push_point_checks(rep: &mut VerificationReport, p: &GeometricParams, d: &PeriodDiagnostics, ctx: &str) {
    let tiny = 1e-14;
    let e = &d.end;
    let ints = &d.integrals;
    let s = p.sin_rho();
    let mut add = |c: CheckEntry| rep.entries.push(c.with_context(ctx));

    add(CheckEntry::at_least("end box a >= a_min", e.a, A_MIN, tiny));
    add(CheckEntry::at_most("end box a <= a_max", e.a, A_MAX, tiny));
    add(CheckEntry::at_least("end box b >= b_min", e.b, B_MIN, tiny));
    add(CheckEntry::at_most("end box b <= sin rho", e.b, s, tiny));

    let j1e = ints.j1.error_estimate.max(1e-15 * ints.j1.value.abs());
    let j2e = ints.j2.error_estimate.max(1e-15 * ints.j2.value.abs());
    add(CheckEntry::greater("J1 lower", ints.j1.value, j1_min(p.lambda), j1e));
    add(CheckEntry::less("J1 upper", ints.j1.value, j1_max(p.lambda), j1e));
    add(CheckEntry::greater("J2 lower", ints.j2.value, j2_min(p.lambda), j2e));
    add(CheckEntry::less("J2 upper", ints.j2.value, j2_max(p.lambda), j2e));

    let inv1 = c1_reciprocal_over_r(p, e);
    let (lo1, hi1) = c1_reciprocal_bounds(p);
    add(CheckEntry::greater("1/(r c1) lower", inv1, lo1, tiny * inv1.abs()));
    add(CheckEntry::less("1/(r c1) upper", inv1, hi1, tiny * inv1.abs()));

    let c3t = c3_tilde_from(p, e, ints.j1.value, ints.j2.value);
    let inv3 = 1.0 / (p.r * c3t);
    let e3 = 10.0 * (rel_err(&ints.j1) + rel_err(&ints.j2)) * inv3.abs() + tiny * inv3.abs();
    let (lo3, hi3) = c3_tilde_reciprocal_bounds(p);
    add(CheckEntry::greater("1/(r c3_tilde) lower", inv3, lo3, e3));
    add(CheckEntry::less("1/(r c3_tilde) upper", inv3, hi3, e3));

    let i1e = ints.i1.error_estimate.max(1e-15 * ints.i1.value.abs());
    add(CheckEntry::greater("I1 positive", ints.i1.value, 0.0, i1e));

    let r2c1 = p.r * p.r * d.c1;
    add(CheckEntry::greater("r^2 c1 > 0", r2c1, 0.0, tiny * r2c1.abs()));
    add(CheckEntry::less("r^2 c1 < 1", r2c1, 1.0, tiny));

    if p.lambda == 1.0 {
        let i2e = ints.i2.error_estimate.max(1e-15 * ints.i2.value.abs());
        add(CheckEntry::greater("I2 at lambda=1 > 0.886", ints.i2.value, 0.886, i2e));
        add(CheckEntry::greater("I1 at lambda=1 > 0.6588", ints.i1.value, 0.6588, i1e));
        add(CheckEntry::less("I1 at lambda=1 < 1.528", ints.i1.value, 1.528, i1e));
        let ratio = ints.i2.value / ints.i1.value;
        let re = ratio * (rel_err(&ints.i1) + rel_err(&ints.i2));
        add(CheckEntry::greater("I2/I1 at lambda=1 > 0.5798", ratio, 0.5798, re));
        let lhs = 2.0 * A_MAX * f(1.0, p.rho) / ((1.0 + B_MIN).powi(2) + A_MIN * A_MIN) * p.r - p.r * p.r;
        add(CheckEntry::less("balance inequality at lambda=1", lhs, ratio, re));
    }
}

/// Finite-`lambda` surrogates of the large-`lambda` limits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AsymptoticsConfig {
    pub lambda_large: f64,
    pub cap_r: f64,
    pub sin_rho: f64,
    pub rel_tol: f64,
}

impl Default for AsymptoticsConfig {
    fn default() -> Self {
        AsymptoticsConfig { lambda_large: 1e6, cap_r: 0.1, sin_rho: -0.01, rel_tol: 1e-3 }
    }
}

pub fn asymptotics_suite(acfg: &AsymptoticsConfig, cfg: &QuadratureConfig) -> VerificationReport {
    let mut rep = VerificationReport::new("asymptotics");
    let l = acfg.lambda_large;
    let sl = l.sqrt();
    let ctx = format!("lambda={l:e}");
    let tiny = 1e-12;

    rep.entries.push(
        CheckEntry::near("sqrt(lambda) J2min -> pi", sl * j2_min(l), PI, acfg.rel_tol, tiny).with_context(&ctx),
    );
    rep.entries.push(
        CheckEntry::near("sqrt(lambda) J2max -> 1.003 pi", sl * j2_max(l), 1.003 * PI, acfg.rel_tol, tiny)
            .with_context(&ctx),
    );

    let rho = acfg.sin_rho.asin();
    let point = GeometricParams::from_cap_r(rho, l, acfg.cap_r)
        .and_then(|p| PeriodDiagnostics::compute(&p, cfg, &DiagnosticOptions::default()).map(|d| (p, d)));
    match point {
        Ok((p, d)) => {
            let ctx = format!("lambda={l:e} cap_r={} sin rho={}", acfg.cap_r, acfg.sin_rho);
            let vk_c1 = sl / (p.r * d.c1);
            rep.entries.push(CheckEntry::greater("sqrt(lambda)/(r c1) lower", vk_c1, 1.6928, tiny).with_context(&ctx));
            rep.entries.push(CheckEntry::less("sqrt(lambda)/(r c1) upper", vk_c1, 2.06, tiny).with_context(&ctx));

            let ints = &d.integrals;
            let vk_c3 = sl / (p.r * d.c3_tilde);
            let ek_c3 = 10.0 * (rel_err(&ints.j1) + rel_err(&ints.j2)) * vk_c3.abs();
            let rr = acfg.cap_r;
            rep.entries.push(
                CheckEntry::greater("sqrt(lambda)/(r c3_tilde) lower", vk_c3, 1.6928 * PI / (PI - 2.874 * rr), ek_c3).with_context(&ctx),
            );
            rep.entries.push(
                CheckEntry::less("sqrt(lambda)/(r c3_tilde) upper", vk_c3, 2.07 * PI / (PI - 5.05 * rr), ek_c3).with_context(&ctx),
            );

            let vk_i2 = l.powf(1.5) * ints.i2.value;
            let ek_i2 = l.powf(1.5) * ints.i2.error_estimate;
            rep.entries.push(CheckEntry::less("lambda^1.5 I2 -> -inf", vk_i2, -1e3, ek_i2).with_context(&ctx));

            let vk_i1 = ints.i1.value / l;
            let lower = integrate_halfline_split(|t| 1.0 / ((t * t + 1.06) * f(t, rho)), cfg);
            rep.entries.push(
                CheckEntry::greater(
                    "liminf I1/lambda",
                    vk_i1,
                    lower.value,
                    lower.error_estimate + ints.i1.error_estimate / l,
                )
                .with_context(&ctx),
            );
        }
        Err(e) => rep.entries.push(CheckEntry::judge(
            "asymptotic point",
            format!("evaluation failed: {e}"),
            f64::NAN,
            0.0,
            0.0,
            f64::NAN,
        )),
    }

    // Sign of c2 at moderately large lambda, at the largest admissible r.
    let rho5 = (-0.05f64).asin();
    let lam = 100.0;
    let r = r0(rho5) / lam;
    match GeometricParams::new(rho5, lam, r).and_then(|p| PeriodDiagnostics::compute(&p, cfg, &DiagnosticOptions::default())) {
        Ok(d) => {
            let e = d.c2.abs() * (rel_err(&d.integrals.i1) + rel_err(&d.integrals.i2));
            rep.entries.push(
                CheckEntry::less("c2 negative at large lambda", d.c2, 0.0, e)
                    .with_context("lambda=100 sin rho=-0.05 r=r0/lambda"),
            );
        }
        Err(e) => rep.entries.push(CheckEntry::judge(
            "c2 negative at large lambda",
            format!("evaluation failed: {e}"),
            f64::NAN,
            0.0,
            0.0,
            f64::NAN,
        )),
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Integrals,
    Bounds,
    Asymptotics,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma83" => Ok(Suite::Integrals),
            "bounds" => Ok(Suite::Bounds),
            "asymptotics" => Ok(Suite::Asymptotics),
            "all" => Ok(Suite::All),
            other => Err(crate::Error::InvalidParameter(format!(
                "unknown suite '{other}' (expected lemma83, bounds, asymptotics or all)"
            ))),
        }
    }
}

/// Runs the selected suite(s) with default configuration.
pub fn run_suite(suite: Suite) -> VerificationReport {
    let cfg = suite_quadrature();
    match suite {
        Suite::Integrals => integral_suite(&cfg, 10_000),
        Suite::Bounds => bounds_suite(&BoundsGrid::default(), &cfg),
        Suite::Asymptotics => asymptotics_suite(&AsymptoticsConfig::default(), &cfg),
        Suite::All => VerificationReport::new("")
            .merge(integral_suite(&cfg, 10_000))
            .merge(bounds_suite(&BoundsGrid::default(), &cfg))
            .merge(asymptotics_suite(&AsymptoticsConfig::default(), &cfg)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_must_beat_three_errors() {
        assert!(!CheckEntry::greater("x", 1.0 + 1e-9, 1.0, 1e-9).passed());
        assert!(CheckEntry::greater("x", 1.0 + 1e-8, 1.0, 1e-9).passed());
        assert!(!CheckEntry::less("x", 1.0, 1.0, 0.0).passed());
    }
}

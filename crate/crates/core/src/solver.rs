//! Closing the periods: trace `c1 = c3_tilde` in `cap_r` for each `lambda`,
//! then find where `c1 - c2` changes sign along that curve.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::param_algebra::{r0, rho_in_supported_range, solve_end_cubic, EndConfiguration, GeometricParams};
use crate::periods::{
    c1_reciprocal_bounds, c1_reciprocal_over_r, c3_tilde_reciprocal_bounds,
    c_bounds_from_reciprocal, j1, j2, DiagnosticOptions, PeriodDiagnostics,
};
use crate::quadrature::QuadratureConfig;
use crate::{Error, Result};

/// Brent's method on a bracket with `f(a) f(b) <= 0`.
pub fn brent<F>(mut f: F, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange(format!("bracket [{a}, {b}] has f = ({fa}, {fb})")));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::NoConvergence(format!("Brent iteration did not converge near {b}")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolverConfig {
    pub quad: QuadratureConfig,
    /// Largest `lambda` tried while looking for the `c1 - c2` sign change.
    pub lambda_max: f64,
    /// Number of scan samples used to locate all balance crossings on a slice.
    pub scan_points: usize,
    /// Relative tolerance on `|c1 - c3_tilde| / c1` along the balance curve.
    pub balance_tol: f64,
    /// Relative tolerance on the final residual.
    pub residual_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            quad: QuadratureConfig::with_tol(1e-12, 1e-14),
            lambda_max: 1e4,
            scan_points: 24,
            balance_tol: 1e-10,
            residual_tol: 1e-8,
        }
    }
}

/// Search window in `r` for best-effort slices; `None` means `(0, r0/lambda)`.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct BalanceWindow {
    pub r_min: f64,
    pub r_max: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BalancePoint {
    pub lambda: f64,
    pub cap_r: f64,
    pub c1: f64,
    pub c3_tilde: f64,
    /// Every bracketed crossing found by the scan, as `cap_r` values.
    pub crossings: Vec<f64>,
    /// Set when more than one crossing was found and the smallest was taken.
    pub multiple_crossings: bool,
}

/// `1/(r c3_tilde) - 1/(r c1)`: positive exactly where `c1 > c3_tilde`
/// while both are positive, and finite through sign changes of either.
fn balance_function(rho: f64, lambda: f64, cap_r: f64, quad: &QuadratureConfig) -> Result<f64> {
    let p = GeometricParams::from_cap_r(rho, lambda, cap_r)?;
    let end = solve_end_cubic(&p)?;
    let (jj1, jj2) = (j1(&p, &end, quad).value, j2(&p, &end, quad).value);
    let pi = std::f64::consts::PI;
    let inv3 = (2.0 * end.a * jj2 - pi * p.r) / (pi - 2.0 * end.a * jj1 * p.r);
    Ok(inv3 - c1_reciprocal_over_r(&p, &end))
}

/// Sign of `r c1 - r c3_tilde` at one point, for endpoint checks.
pub fn balance_sign(rho: f64, lambda: f64, cap_r: f64, cfg: &SolverConfig) -> Result<f64> {
    let p = GeometricParams::from_cap_r(rho, lambda, cap_r)?;
    let d = PeriodDiagnostics::compute(&p, &cfg.quad, &DiagnosticOptions::default())?;
    Ok(p.r * d.c1 - p.r * d.c3_tilde)
}

/// The `cap_r` in `(0, r0)` (or in the best-effort window) at which `c1 = c3_tilde`.
pub fn trace_balance_curve(
    rho: f64,
    lambda: f64,
    window: Option<BalanceWindow>,
    cfg: &SolverConfig,
) -> Result<BalancePoint> {
    let (lo, hi) = match window {
        Some(w) => (w.r_min * lambda, w.r_max * lambda),
        None => {
            if !rho_in_supported_range(rho) || lambda < 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "sin(rho) = {} and lambda = {lambda} are outside the supported region \
                     (sin(rho) in [-0.01, 0), lambda >= 1); pass an r window for best-effort use",
                    rho.sin()
                )));
            }
            (1e-6, r0(rho) - 1e-9)
        }
    };
    let n = cfg.scan_points.max(2);
    let mut xs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = k as f64 / n as f64;
        xs.push(if window.is_none() {
            // geometric near 0 where the supported-region crossing lives at large lambda
            lo * (hi / lo).powf(t)
        } else {
            lo + (hi - lo) * t
        });
    }
    let mut vals = Vec::with_capacity(xs.len());
    for &x in &xs {
        vals.push(balance_function(rho, lambda, x, &cfg.quad)?);
    }
    let mut brackets = Vec::new();
    for k in 0..n {
        if vals[k] == 0.0 || vals[k].signum() != vals[k + 1].signum() {
            if vals[k].is_finite() && vals[k + 1].is_finite() {
                brackets.push(k);
            }
        }
    }
    if brackets.is_empty() {
        return Err(Error::NoSignChange(format!(
            "c1 - c3_tilde keeps one sign for cap_r in [{lo}, {hi}] at rho = {rho}, lambda = {lambda}"
        )));
    }
    let mut crossings = Vec::new();
    for &k in &brackets {
        let root = brent(
            |x| balance_function(rho, lambda, x, &cfg.quad),
            xs[k],
            xs[k + 1],
            vals[k],
            vals[k + 1],
            1e-15 * xs[k + 1],
            200,
        )?;
        crossings.push(root);
    }
    let cap_r = crossings[0];
    let p = GeometricParams::from_cap_r(rho, lambda, cap_r)?;
    let end = solve_end_cubic(&p)?;
    let c1 = 1.0 / (p.r * c1_reciprocal_over_r(&p, &end));
    let c3t = crate::periods::c3_tilde_from(&p, &end, j1(&p, &end, &cfg.quad).value, j2(&p, &end, &cfg.quad).value);
    if (c1 - c3t).abs() > cfg.balance_tol * c1.abs() {
        return Err(Error::NoConvergence(format!(
            "balance residual {:e} above tolerance at lambda = {lambda}",
            (c1 - c3t).abs() / c1.abs()
        )));
    }
    Ok(BalancePoint {
        lambda,
        cap_r,
        c1,
        c3_tilde: c3t,
        multiple_crossings: crossings.len() > 1,
        crossings,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificates {
    /// `r*^2 c* in (0, 1)`.
    pub r2c_in_unit_interval: bool,
    /// `lambda* r* in (0, r0)`.
    pub cap_r_in_range: bool,
    pub lambda_above_one: bool,
    /// `r* sqrt(c*)`, which must lie in `(0, 1)`.
    pub r_sqrt_c: f64,
    /// `max |c_i - c_j| / c*` over `c1, c2, c3, c3_tilde`.
    pub residual: f64,
    /// `|closure mismatch| / |I1|`.
    pub closure_residual: f64,
    /// Relative difference of the middle and side residue lengths.
    pub residue_balance: f64,
}

impl Certificates {
    pub fn all_pass(&self, residual_tol: f64) -> bool {
        self.r2c_in_unit_interval
            && self.cap_r_in_range
            && self.lambda_above_one
            && self.r_sqrt_c > 0.0
            && self.r_sqrt_c < 1.0
            && self.residual < residual_tol
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolvedSurface {
    pub rho: f64,
    pub params: GeometricParams,
    pub cap_r: f64,
    pub c_star: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c3_tilde: f64,
    pub end: EndConfiguration,
    pub certificates: Certificates,
    pub best_effort: bool,
    /// `lambda` intervals on the march where `c1 - c2` changed sign.
    pub sign_change_brackets: Vec<(f64, f64)>,
    pub multiple_crossings: bool,
}

impl SolvedSurface {
    /// Square root of `c_star`, the López-Ros parameter used by the immersion.
    pub fn c(&self) -> f64 {
        self.c_star.sqrt()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_json()?.as_bytes())?;
        f.write_all(b"\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveOptions {
    /// `lambda` values marched in order looking for the `c1 - c2` sign change.
    pub lambda_schedule: Vec<f64>,
    pub window: Option<BalanceWindow>,
}

impl SolveOptions {
    /// `lambda = 2^k` up to `lambda_max`, over the whole supported `cap_r` range.
    pub fn supported(lambda_max: f64) -> Self {
        let mut sched = Vec::new();
        let mut l = 1.0;
        while l <= lambda_max {
            sched.push(l);
            l *= 2.0;
        }
        SolveOptions { lambda_schedule: sched, window: None }
    }

    /// Evenly spaced `lambda` grid with a fixed `r` window.
    pub fn best_effort(lambda_lo: f64, lambda_hi: f64, steps: usize, r_min: f64, r_max: f64) -> Self {
        let steps = steps.max(1);
        let sched = (0..=steps)
            .map(|k| lambda_lo + (lambda_hi - lambda_lo) * k as f64 / steps as f64)
            .collect();
        SolveOptions { lambda_schedule: sched, window: Some(BalanceWindow { r_min, r_max }) }
    }
}

/// `c1 - c2` on the balance curve, divided by `c1`.
fn curve_function(rho: f64, lambda: f64, window: Option<BalanceWindow>, cfg: &SolverConfig) -> Result<(f64, BalancePoint)> {
    let bp = trace_balance_curve(rho, lambda, window, cfg)?;
    let p = GeometricParams::from_cap_r(rho, lambda, bp.cap_r)?;
    let end = solve_end_cubic(&p)?;
    let i1 = crate::periods::i1(&p, &end, &cfg.quad).value;
    let i2 = crate::periods::i2(&p, &end, &cfg.quad).value;
    // c1 - c2 = c1 - i1/i2; scale by i2/c1 to stay finite through i2 = 0.
    let val = (bp.c1 * i2 - i1) / (bp.c1 * i2.abs().max(1e-300)) * i2.signum();
    Ok((val, bp))
}

/// Close all periods for the given `rho` in the supported region.
pub fn solve_periods(rho: f64, cfg: &SolverConfig) -> Result<SolvedSurface> {
    solve_periods_with(rho, &SolveOptions::supported(cfg.lambda_max), cfg)
}

pub fn solve_periods_with(rho: f64, opts: &SolveOptions, cfg: &SolverConfig) -> Result<SolvedSurface> {
    let best_effort = opts.window.is_some();
    if !best_effort && !rho_in_supported_range(rho) {
        return Err(Error::InvalidParameter(format!(
            "sin(rho) = {} outside the supported range [-0.01, 0); use best-effort mode",
            rho.sin()
        )));
    }
    let mut march: Vec<(f64, f64)> = Vec::new();
    let mut log = String::new();
    for &l in &opts.lambda_schedule {
        match curve_function(rho, l, opts.window, cfg) {
            Ok((v, bp)) => {
                log.push_str(&format!("lambda={l} cap_r={} c1-c2 (rel)={v:e}; ", bp.cap_r));
                march.push((l, v));
            }
            Err(e) => log.push_str(&format!("lambda={l}: {e}; ")),
        }
    }
    let brackets: Vec<(f64, f64)> = march
        .windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .map(|w| (w[0].0, w[1].0))
        .collect();
    let Some(&(la, lb)) = brackets.first() else {
        return Err(Error::NoSolution(format!(
            "c1 - c2 keeps one sign along the balance curve for rho = {rho}: {log}"
        )));
    };
    let fa = march.iter().find(|m| m.0 == la).unwrap().1;
    let fb = march.iter().find(|m| m.0 == lb).unwrap().1;
    let lambda_star = brent(
        |l| curve_function(rho, l, opts.window, cfg).map(|x| x.0),
        la,
        lb,
        fa,
        fb,
        1e-14 * lb,
        200,
    )?;
    let mut solved = finish(rho, lambda_star, opts.window, cfg, best_effort)?;
    solved.sign_change_brackets = brackets;
    Ok(solved)
}

/// Re-solve in a narrow bracket around an earlier solution.
pub fn resolve_from(previous: &SolvedSurface, cfg: &SolverConfig) -> Result<SolvedSurface> {
    let rho = previous.rho;
    let l0 = previous.params.lambda;
    let window = if previous.best_effort {
        Some(BalanceWindow { r_min: previous.params.r * 0.9, r_max: previous.params.r * 1.1 })
    } else {
        None
    };
    let mut width = 1e-6;
    for _ in 0..8 {
        let (la, lb) = (l0 * (1.0 - width), l0 * (1.0 + width));
        let fa = curve_function(rho, la, window, cfg)?.0;
        let fb = curve_function(rho, lb, window, cfg)?.0;
        if fa.signum() != fb.signum() {
            let l = brent(|l| curve_function(rho, l, window, cfg).map(|x| x.0), la, lb, fa, fb, 1e-14 * lb, 200)?;
            let mut s = finish(rho, l, window, cfg, previous.best_effort)?;
            s.sign_change_brackets = previous.sign_change_brackets.clone();
            return Ok(s);
        }
        width *= 10.0;
    }
    Err(Error::NoSignChange(format!("no sign change near lambda = {l0}")))
}

fn finish(rho: f64, lambda: f64, window: Option<BalanceWindow>, cfg: &SolverConfig, best_effort: bool) -> Result<SolvedSurface> {
    let bp = trace_balance_curve(rho, lambda, window, cfg)?;
    let p = GeometricParams::from_cap_r(rho, lambda, bp.cap_r)?;
    let d = PeriodDiagnostics::compute(&p, &cfg.quad, &DiagnosticOptions::default())?;
    let c_star = d.c1;
    let cs = [d.c1, d.c2, d.c3, d.c3_tilde];
    let mut residual: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            residual = residual.max((cs[i] - cs[j]).abs() / c_star.abs());
        }
    }
    let c = c_star.sqrt();
    let mid = d.residue_middle[1];
    let side = d.residue_side[1];
    let certificates = Certificates {
        r2c_in_unit_interval: p.r * p.r * c_star > 0.0 && p.r * p.r * c_star < 1.0,
        cap_r_in_range: p.cap_r() > 0.0 && p.cap_r() < r0(rho),
        lambda_above_one: lambda > 1.0,
        r_sqrt_c: p.r * c,
        residual,
        closure_residual: d.integrals.closure_mismatch(c_star).norm() / d.integrals.i1.value.abs(),
        residue_balance: (mid - side).abs() / mid.abs(),
    };
    Ok(SolvedSurface {
        rho,
        params: p,
        cap_r: p.cap_r(),
        c_star,
        c1: d.c1,
        c2: d.c2,
        c3: d.c3,
        c3_tilde: d.c3_tilde,
        end: d.end,
        certificates,
        best_effort,
        sign_change_brackets: Vec::new(),
        multiple_crossings: bp.multiple_crossings,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub r: f64,
    pub cap_r: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c3_tilde: f64,
    pub c1_lo: f64,
    pub c1_hi: f64,
    pub c3t_lo: f64,
    pub c3t_hi: f64,
    pub flags: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepTable {
    pub rho: f64,
    pub lambdas: Vec<f64>,
    pub r_grid: Vec<f64>,
    pub rows: Vec<SweepRow>,
}

fn sweep_row(rho: f64, lambda: f64, r: f64, quad: &QuadratureConfig) -> SweepRow {
    let nan = f64::NAN;
    let bad = |msg: String| SweepRow {
        lambda,
        r,
        cap_r: lambda * r,
        c1: nan,
        c2: nan,
        c3: nan,
        c3_tilde: nan,
        c1_lo: nan,
        c1_hi: nan,
        c3t_lo: nan,
        c3t_hi: nan,
        flags: msg,
    };
    let p = match GeometricParams::new(rho, lambda, r) {
        Ok(p) => p,
        Err(_) => return bad("invalid".into()),
    };
    let d = match PeriodDiagnostics::compute(&p, quad, &DiagnosticOptions::default()) {
        Ok(d) => d,
        Err(e) => return bad(format!("error:{}", e.to_string().replace([',', ' '], "_"))),
    };
    let (c1_lo, c1_hi) = c_bounds_from_reciprocal(r, c1_reciprocal_bounds(&p));
    let (c3t_lo, c3t_hi) = c_bounds_from_reciprocal(r, c3_tilde_reciprocal_bounds(&p));
    SweepRow {
        lambda,
        r,
        cap_r: p.cap_r(),
        c1: d.c1,
        c2: d.c2,
        c3: d.c3,
        c3_tilde: d.c3_tilde,
        c1_lo,
        c1_hi,
        c3t_lo,
        c3t_hi,
        flags: d.flags.labels().join("|"),
    }
}

/// All balance functions and their bounds on a `lambda x r` grid.
///
/// Rows are computed on up to `threads` worker threads and returned sorted
/// by `(lambda, r)`. A row whose sign of `c1 - c2` (or `c1 - c3_tilde`)
/// differs from the previous row with the same `lambda` gets a crossing flag.
pub fn sweep(rho: f64, lambdas: &[f64], r_grid: &[f64], quad: &QuadratureConfig, threads: usize) -> SweepTable {
    let mut lam: Vec<f64> = lambdas.to_vec();
    lam.sort_by(f64::total_cmp);
    let mut rs: Vec<f64> = r_grid.to_vec();
    rs.sort_by(f64::total_cmp);
    let jobs: Vec<(f64, f64)> = lam.iter().flat_map(|&l| rs.iter().map(move |&r| (l, r))).collect();
    let threads = threads.max(1).min(jobs.len().max(1));
    let chunk = jobs.len().div_ceil(threads).max(1);
    let mut rows: Vec<SweepRow> = Vec::with_capacity(jobs.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&(l, r)| sweep_row(rho, l, r, quad)).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            rows.extend(h.join().expect("sweep worker panicked"));
        }
    });
    for k in 1..rows.len() {
        if rows[k].lambda != rows[k - 1].lambda {
            continue;
        }
        let (prev, cur) = (&rows[k - 1], &rows[k]);
        let mut extra = Vec::new();
        if (prev.c1 - prev.c2).signum() != (cur.c1 - cur.c2).signum() {
            extra.push("c1c2_cross");
        }
        if (prev.c1 - prev.c3_tilde).signum() != (cur.c1 - cur.c3_tilde).signum() {
            extra.push("c1c3t_cross");
        }
        if !extra.is_empty() {
            let row = &mut rows[k];
            let mut parts: Vec<&str> = row.flags.split('|').filter(|s| !s.is_empty()).collect();
            parts.extend(extra);
            row.flags = parts.join("|");
        }
    }
    SweepTable { rho, lambdas: lam, r_grid: rs, rows }
}

/// CSV column order written by [`SweepTable::write_csv`].
pub const SWEEP_HEADER: [&str; 12] = [
    "lambda", "r", "cap_r", "c1", "c2", "c3", "c3_tilde", "c1_lo", "c1_hi", "c3t_lo", "c3t_hi", "flags",
];

impl SweepTable {
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(SWEEP_HEADER)?;
        for row in &self.rows {
            let nums = [
                row.lambda, row.r, row.cap_r, row.c1, row.c2, row.c3, row.c3_tilde, row.c1_lo, row.c1_hi,
                row.c3t_lo, row.c3t_hi,
            ];
            let mut rec: Vec<String> = nums.iter().map(|v| format!("{v:.17e}")).collect();
            rec.push(row.flags.clone());
            wr.write_record(&rec)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(rho: f64, r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let num = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| Error::InvalidParameter(format!("missing column {i}")))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidParameter(format!("column {i}: {e}")))
            };
            rows.push(SweepRow {
                lambda: num(0)?,
                r: num(1)?,
                cap_r: num(2)?,
                c1: num(3)?,
                c2: num(4)?,
                c3: num(5)?,
                c3_tilde: num(6)?,
                c1_lo: num(7)?,
                c1_hi: num(8)?,
                c3t_lo: num(9)?,
                c3t_hi: num(10)?,
                flags: rec.get(11).unwrap_or("").to_string(),
            });
        }
        let mut lambdas: Vec<f64> = rows.iter().map(|r| r.lambda).collect();
        lambdas.dedup();
        let mut r_grid: Vec<f64> = rows.iter().map(|r| r.r).collect();
        r_grid.sort_by(f64::total_cmp);
        r_grid.dedup();
        Ok(SweepTable { rho, lambdas, r_grid, rows })
    }
}

/// `steps` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cube_root_of_two() {
        let f = |x: f64| Ok(x * x * x - 2.0);
        let x = brent(f, 0.0, 2.0, -2.0, 6.0, 1e-15, 100).unwrap();
        assert!((x - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn linspace_edges() {
        assert!(linspace(0.0, 1.0, 0).is_empty());
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }
}

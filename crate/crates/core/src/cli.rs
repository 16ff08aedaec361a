//! Command-line front end. Every command writes files or prints documents;
//! exit status is 0 on success, 1 when a solve or check fails and 2 on bad usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::param_algebra::{r0, rho_in_supported_range, solve_end_cubic, GeometricParams};
use crate::quadrature::QuadratureConfig;
use crate::solver::{linspace, solve_periods_with, sweep, SolveOptions, SolvedSurface, SolverConfig};
use crate::surface_mesh::export::save_mesh;
use crate::surface_mesh::ode::OdeTolerance;
use crate::surface_mesh::{
    costa, deformation_family, gauss_region_check, immerse, period_gap, replicate, replicate_translations,
    CostaConfig, GridConfig,
};
use crate::verify::{run_suite, Suite};
use crate::Error;

const REGION: &str = "Supported region: rho in radians with sin(rho) in [-0.01, 0), lambda >= 1 and \
lambda*r <= r0(rho), where r0 = sqrt(y0 (y0^2 + 2|sin rho| y0 + 1)) / (y0 + 1) with y0 = 0.2 \
(about 0.384 for small |rho|). All lengths and parameters are dimensionless.";

#[derive(Parser, Debug)]
#[command(name = "scherk-costa", version, about = "Singly periodic Scherk-Costa minimal surfaces: period solving, meshes and checks", after_help = REGION)]
pub struct Cli {
    /// Upper bound on worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    #[command(flatten)]
    pub tol: Tolerances,

    #[command(subcommand)]
    pub command: Command,
}

/// Tolerance defaults, each overridable from the environment.
#[derive(Args, Debug, Clone)]
#[command(next_help_heading = "Tolerances")]
pub struct Tolerances {
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, global = true, env = "SCHERK_COSTA_QUAD_REL_TOL", default_value_t = 1e-10)]
    pub quad_rel_tol: f64,
    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long, global = true, env = "SCHERK_COSTA_QUAD_ABS_TOL", default_value_t = 1e-12)]
    pub quad_abs_tol: f64,
    /// Relative tolerance of the path ODE integrator used for meshes.
    #[arg(long, global = true, env = "SCHERK_COSTA_ODE_REL_TOL", default_value_t = 1e-12)]
    pub ode_rel_tol: f64,
    /// Absolute tolerance of the path ODE integrator used for meshes.
    #[arg(long, global = true, env = "SCHERK_COSTA_ODE_ABS_TOL", default_value_t = 1e-14)]
    pub ode_abs_tol: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Close all periods for one rho and print the solution document (JSON).
    #[command(after_help = REGION)]
    Solve(SolveArgs),
    /// Tabulate c1, c2, c3, c3_tilde and their bounds over a lambda x r grid (CSV).
    #[command(after_help = REGION)]
    Sweep(SweepArgs),
    /// Mesh the fundamental piece of a solved surface (OBJ or PLY plus a JSON sidecar).
    #[command(after_help = REGION)]
    Mesh(MeshArgs),
    /// Mesh Costa's surface (mu = mu0) or an open half-Costa piece (any other mu).
    Costa(CostaArgs),
    /// Mesh a member of the deformation from a solved surface towards half-Costa.
    #[command(after_help = REGION)]
    Family(FamilyArgs),
    /// Run the numerical checks of the estimates behind the existence proof.
    Verify(VerifyArgs),
    /// Horizontal period gap of the closing loop at arbitrary (rho, lambda, r, c).
    #[command(name = "period-gap", after_help = REGION)]
    PeriodGap(GapArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Rotation angle rho in radians. Needs sin(rho) in [-0.01, 0) unless --best-effort.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: f64,
    /// Largest lambda tried by the doubling march lambda = 1, 2, 4, ... (dimensionless, > 1).
    #[arg(long, default_value_t = 1e4)]
    pub lambda_max: f64,
    /// Search outside the supported region on an even lambda grid with a fixed r window.
    #[arg(long)]
    pub best_effort: bool,
    /// Best-effort lambda range start.
    #[arg(long, default_value_t = 0.85, requires = "best_effort")]
    pub lambda_lo: f64,
    /// Best-effort lambda range end.
    #[arg(long, default_value_t = 1.0, requires = "best_effort")]
    pub lambda_hi: f64,
    /// Best-effort number of lambda intervals.
    #[arg(long, default_value_t = 15, requires = "best_effort")]
    pub lambda_steps: usize,
    /// Best-effort r window start (dimensionless, > 0).
    #[arg(long, default_value_t = 0.65, requires = "best_effort")]
    pub r_min: f64,
    /// Best-effort r window end.
    #[arg(long, default_value_t = 0.75, requires = "best_effort")]
    pub r_max: f64,
    /// Write the solution document here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Rotation angle rho in radians (any value in (-pi/2, pi/2); rows outside the
    /// supported region are flagged, not rejected).
    #[arg(long, allow_hyphen_values = true)]
    pub rho: f64,
    /// Comma separated lambda values (dimensionless, > 0).
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<f64>,
    /// Smallest r (dimensionless, >= 0).
    #[arg(long)]
    pub r_min: f64,
    /// Largest r.
    #[arg(long)]
    pub r_max: f64,
    /// Number of evenly spaced r values, endpoints included.
    #[arg(long)]
    pub steps: usize,
    /// Write CSV here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Coarsest grid cells across the fundamental rectangle (>= 4).
    #[arg(long, default_value_t = 48)]
    pub cells: usize,
    /// Grid cells per end-hole radius near the ends (>= 1).
    #[arg(long, default_value_t = 6.0)]
    pub cells_per_hole: f64,
    /// Side-end hole radius as a fraction of its distance to the branch point, in (0, 0.9).
    #[arg(long, default_value_t = 0.5)]
    pub hole_fraction: f64,
}

#[derive(Args, Debug)]
pub struct MeshArgs {
    /// Rotation angle rho in radians; solved on the fly unless --solved-file is given.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Solution document written by `solve`.
    #[arg(long, value_name = "FILE")]
    pub solved_file: Option<PathBuf>,
    /// Output mesh; the extension (.obj or .ply) selects the format.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Translated copies on each side; 0 writes the fundamental piece only.
    #[arg(long, default_value_t = 0)]
    pub copies: usize,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args, Debug)]
pub struct CostaArgs {
    /// Gauss map factor mu (> 0). Omit to solve for the closing value mu0 (about 1.046).
    #[arg(long)]
    pub mu: Option<f64>,
    /// Output mesh (.obj or .ply).
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Grid cells per side of the square torus (rounded up to a multiple of 4).
    #[arg(long, default_value_t = 96)]
    pub cells: usize,
    /// End hole radius as a fraction of the real half period, in (0, 0.45).
    #[arg(long, default_value_t = 0.2)]
    pub hole_radius: f64,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Deformation parameter s in [0, 1); s -> 1 approaches half-Costa.
    #[arg(long)]
    pub s: f64,
    /// Target Costa factor mu (> 0).
    #[arg(long)]
    pub mu: f64,
    /// Output mesh (.obj or .ply).
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Starting solution rho in radians (default -0.005) unless --solved-file is given.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Solution document written by `solve`.
    #[arg(long, value_name = "FILE")]
    pub solved_file: Option<PathBuf>,
    /// Radius parameter kappa (> 1) of the Gauss map region check.
    #[arg(long, default_value_t = 10.0)]
    pub kappa: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// lemma83 (the twelve integral and pointwise inequalities), bounds (end boxes,
    /// J bounds, balance signs on a 5x5x5 grid over the supported region),
    /// asymptotics (large-lambda surrogates at lambda = 1e6) or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Also write the machine readable report here.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GapArgs {
    /// Rotation angle rho in radians, |rho| < pi/2.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: f64,
    /// Middle end depth lambda (dimensionless, > 0).
    #[arg(long)]
    pub lambda: f64,
    /// Side end parameter r (dimensionless, > 0).
    #[arg(long)]
    pub r: f64,
    /// Balance value c (> 0), the square of the López-Ros factor.
    #[arg(long)]
    pub c: f64,
    /// Radius of the indentation around the middle end, in (0, lambda/2).
    #[arg(long, default_value_t = 1e-3)]
    pub delta: f64,
}

struct Ctx {
    threads: usize,
    quad: QuadratureConfig,
    ode: OdeTolerance,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn grid_config(g: &GridArgs, ctx: &Ctx) -> GridConfig {
    GridConfig {
        cells: g.cells,
        cells_per_hole: g.cells_per_hole,
        hole_fraction: g.hole_fraction,
        ode: ctx.ode,
        quad: ctx.quad.clone(),
        audit: true,
        threads: ctx.threads,
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> crate::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut so = std::io::stdout().lock();
            match so.write_all(text.as_bytes()).and_then(|_| so.flush()) {
                // a closed pipe (e.g. `| head`) is not a failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn solver_config(ctx: &Ctx) -> SolverConfig {
    SolverConfig { quad: ctx.quad.clone(), ..Default::default() }
}

fn check_rho(rho: f64) -> crate::Result<()> {
    if !rho_in_supported_range(rho) {
        return Err(usage(format!(
            "rho = {rho} has sin(rho) = {:.6}, outside [-0.01, 0). {REGION}",
            rho.sin()
        )));
    }
    Ok(())
}

fn load_or_solve(rho: Option<f64>, file: &Option<PathBuf>, ctx: &Ctx, default_rho: Option<f64>) -> crate::Result<SolvedSurface> {
    match (file, rho.or(default_rho)) {
        (Some(f), _) => SolvedSurface::load(f),
        (None, Some(r)) => {
            check_rho(r)?;
            let cfg = solver_config(ctx);
            solve_periods_with(r, &SolveOptions::supported(cfg.lambda_max), &cfg)
        }
        (None, None) => Err(usage("give --rho or --solved-file")),
    }
}

fn cmd_solve(a: &SolveArgs, ctx: &Ctx) -> crate::Result<i32> {
    let mut cfg = solver_config(ctx);
    cfg.lambda_max = a.lambda_max;
    let opts = if a.best_effort {
        if !(a.r_min > 0.0 && a.r_max > a.r_min && a.lambda_hi > a.lambda_lo && a.lambda_lo > 0.0) {
            return Err(usage("best-effort needs 0 < lambda-lo < lambda-hi and 0 < r-min < r-max"));
        }
        SolveOptions::best_effort(a.lambda_lo, a.lambda_hi, a.lambda_steps, a.r_min, a.r_max)
    } else {
        check_rho(a.rho)?;
        if !(a.lambda_max > 1.0) {
            return Err(usage("lambda-max must exceed 1"));
        }
        SolveOptions::supported(a.lambda_max)
    };
    let s = solve_periods_with(a.rho, &opts, &cfg)?;
    emit(&a.out, &(s.to_json()? + "\n"))?;
    let ok = if s.best_effort { s.certificates.residual < 1e-3 } else { s.certificates.all_pass(cfg.residual_tol) };
    Ok(if ok { 0 } else { 1 })
}

fn cmd_sweep(a: &SweepArgs, ctx: &Ctx) -> crate::Result<i32> {
    if !(a.rho.abs() < std::f64::consts::FRAC_PI_2) {
        return Err(usage(format!("rho = {} must lie in (-pi/2, pi/2)", a.rho)));
    }
    if !(a.r_min >= 0.0 && a.r_max >= a.r_min) || a.lambda.iter().any(|l| !(*l > 0.0)) {
        return Err(usage("need 0 <= r-min <= r-max and every lambda > 0"));
    }
    let table = sweep(a.rho, &a.lambda, &linspace(a.r_min, a.r_max, a.steps), &ctx.quad, ctx.threads);
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    emit(&a.out, &String::from_utf8_lossy(&buf))?;
    Ok(0)
}

fn cmd_mesh(a: &MeshArgs, ctx: &Ctx) -> crate::Result<i32> {
    crate::surface_mesh::export::MeshFormat::from_path(&a.out)?;
    let s = load_or_solve(a.rho, &a.solved_file, ctx, None)?;
    let grid = grid_config(&a.grid, ctx);
    let imm = immerse(&s.params, &s.end, s.c_star, &grid)?;
    let gap = period_gap(&s.params, &s.end, s.c_star, 1e-3, &ctx.quad)?;
    let mesh = replicate(&imm.mesh, a.copies)?;
    let meta = json!({
        "surface": "scherk-costa",
        "rho": s.rho,
        "lambda": s.params.lambda,
        "r": s.params.r,
        "c": s.c_star,
        "period": imm.mesh.period,
        "copies": a.copies,
        "grid": grid,
        "vertices": mesh.vertices.len(),
        "triangles": mesh.triangles.len(),
        "period_gap": gap.gap,
        "diagnostics": imm.diagnostics,
        "certificates": s.certificates,
    });
    save_mesh(&mesh, &a.out, &meta)?;
    let closed = gap.gap < 1e-6 * imm.diagnostics.side_period[1].abs();
    Ok(if closed { 0 } else { 1 })
}

fn cmd_costa(a: &CostaArgs, ctx: &Ctx) -> crate::Result<i32> {
    crate::surface_mesh::export::MeshFormat::from_path(&a.out)?;
    let cfg = CostaConfig { cells: a.cells, hole_radius: a.hole_radius, ode: ctx.ode, audit: true, threads: ctx.threads };
    let cs = costa(a.mu, &cfg)?;
    let meta = json!({
        "surface": if a.mu.is_some_and(|m| (m - cs.mu0).abs() > 1e-12 * cs.mu0) { "costa-open" } else { "costa" },
        "mu": cs.mu,
        "mu0": cs.mu0,
        "below_mu0": cs.below_mu0,
        "period_gap": cs.period_gap,
        "cycle_residual": cs.cycle_residual,
        "grid": cfg,
        "vertices": cs.mesh.vertices.len(),
        "triangles": cs.mesh.triangles.len(),
    });
    save_mesh(&cs.mesh, &a.out, &meta)?;
    if cs.below_mu0 {
        eprintln!("note: mu = {} is below mu0 = {}", cs.mu, cs.mu0);
    }
    Ok(0)
}

fn cmd_family(a: &FamilyArgs, ctx: &Ctx) -> crate::Result<i32> {
    crate::surface_mesh::export::MeshFormat::from_path(&a.out)?;
    if !(0.0..1.0).contains(&a.s) || !(a.mu > 0.0) || !(a.kappa > 1.0) {
        return Err(usage("need s in [0, 1), mu > 0 and kappa > 1"));
    }
    let s = load_or_solve(a.rho, &a.solved_file, ctx, Some(-0.005))?;
    let m = deformation_family(&s, a.mu, a.s, &ctx.quad)?;
    let report = gauss_region_check(&m, a.kappa, 200)?;
    let grid = grid_config(&a.grid, ctx);
    let imm = immerse(&m.params, &m.end, m.c, &grid)?;
    let mesh = replicate_translations(&imm.mesh, 0)?;
    let meta = json!({
        "surface": "deformation-family",
        "s": a.s,
        "mu": a.mu,
        "rho": m.params.rho,
        "lambda": m.params.lambda,
        "r": m.params.r,
        "c": m.c,
        "c1": m.c1,
        "c2": m.c2,
        "choice": m.choice,
        "c_over_lambda2": m.c_over_lambda2,
        "period": imm.mesh.period,
        "grid": grid,
        "gauss_regions": report,
        "diagnostics": imm.diagnostics,
    });
    save_mesh(&mesh, &a.out, &meta)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> crate::Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let rep = run_suite(suite);
    emit(&None, &rep.to_table())?;
    if let Some(p) = &a.json {
        std::fs::write(p, rep.to_json()? + "\n")?;
    }
    Ok(if rep.passed() { 0 } else { 1 })
}

fn cmd_gap(a: &GapArgs, ctx: &Ctx) -> crate::Result<i32> {
    let p = GeometricParams::new(a.rho, a.lambda, a.r)?;
    if !(a.r > 0.0) {
        return Err(usage("r must be positive"));
    }
    let end = solve_end_cubic(&p)?;
    let g = period_gap(&p, &end, a.c, a.delta, &ctx.quad)?;
    let doc = json!({
        "rho": a.rho,
        "lambda": a.lambda,
        "r": a.r,
        "c": a.c,
        "in_supported_region": p.in_supported_region(),
        "r0": r0(a.rho),
        "gap": g.gap,
        "components": g.components,
        "delta": g.delta,
        "error_estimate": g.error_estimate,
        "converged": g.converged,
    });
    emit(&None, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    Ok(0)
}

/// Parses `args` and runs the command, returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let t = &cli.tol;
    if [t.quad_rel_tol, t.quad_abs_tol, t.ode_rel_tol, t.ode_abs_tol].iter().any(|v| !(*v > 0.0 && *v < 1.0)) {
        eprintln!("error: tolerances must lie in (0, 1)");
        return 2;
    }
    let ctx = Ctx {
        threads: cli
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
            .max(1),
        quad: QuadratureConfig::with_tol(t.quad_rel_tol, t.quad_abs_tol),
        ode: OdeTolerance { rel_tol: t.ode_rel_tol, abs_tol: t.ode_abs_tol, ..Default::default() },
    };
    let res = match &cli.command {
        Command::Solve(a) => cmd_solve(a, &ctx),
        Command::Sweep(a) => cmd_sweep(a, &ctx),
        Command::Mesh(a) => cmd_mesh(a, &ctx),
        Command::Costa(a) => cmd_costa(a, &ctx),
        Command::Family(a) => cmd_family(a, &ctx),
        Command::Verify(a) => cmd_verify(a),
        Command::PeriodGap(a) => cmd_gap(a, &ctx),
    };
    match res {
        Ok(code) => code,
        Err(e @ Error::InvalidParameter(_)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Path helper for callers that want the sidecar of a mesh they wrote.
pub fn sidecar_of(mesh: &Path) -> PathBuf {
    crate::surface_mesh::export::sidecar_path(mesh)
}

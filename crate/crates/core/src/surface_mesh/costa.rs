//! Costa's surface on the square torus and its open one-parameter relatives.
//!
//! The square torus carries the lemniscatic `F = wp(s)` with `F'^2 = 4F^3 - 4F`,
//! real half period `omega`, `F(omega) = 1`, `F(i omega) = -1` and
//! `F(omega + i omega) = 0`. With `beta = e^{i pi/4} / 2` the data are
//!
//! `g = mu beta F'`, `dh = F' ds / (F^2 - 1)`,
//!
//! so `g dh = 4 mu beta F ds` and `dh / g = ds / (mu beta (F^2 - 1))`. The ends
//! sit at `s = 0` (planar) and `s = omega`, `i omega` (catenoidal). Exactly
//! one `mu = mu0` kills the periods; other values give an open surface that is
//! still single valued on the diamond `|Re(s - omega)| + |Im s| <= omega`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::lattice::{audit, spread, Graph};
use super::ode::{integrate_segment, OdeTolerance};
use super::{normal_from_gauss, BoundaryTag, SurfaceMesh};
use crate::{Error, Result};

type C = Complex64;
const I: C = C::new(0.0, 1.0);

/// Real half period of the lemniscatic torus, `pi / (2 sqrt 2 agm(1, 1/sqrt 2))`.
pub fn lemniscate_omega() -> f64 {
    let (mut a, mut b) = (1.0f64, std::f64::consts::FRAC_1_SQRT_2);
    for _ in 0..40 {
        let (na, nb) = (0.5 * (a + b), (a * b).sqrt());
        a = na;
        b = nb;
    }
    PI / (2.0 * std::f64::consts::SQRT_2 * a)
}

fn beta() -> C {
    C::from_polar(0.5, FRAC_PI_4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rep {
    F,
    V,
}

/// `F` (or `1/F`), its derivative, and the running integrals of `F`,
/// `1 / (F^2 - 1)` and `dh`.
#[derive(Clone, Copy, Debug)]
struct CState {
    rep: Rep,
    y: [C; 5],
}

impl CState {
    fn convert(&self) -> Option<CState> {
        let (a, da) = (self.y[0], self.y[1]);
        if a.norm() < 1e-150 {
            return None;
        }
        let mut y = self.y;
        y[0] = 1.0 / a;
        y[1] = -da / (a * a);
        Some(CState { rep: if self.rep == Rep::F { Rep::V } else { Rep::F }, y })
    }

    fn raw(&self) -> [C; 3] {
        [self.y[2], self.y[3], self.y[4]]
    }

    /// `F'`, or `None` at the pole of `F`.
    fn f_prime(&self) -> Option<C> {
        match self.rep {
            Rep::F => Some(self.y[1]),
            Rep::V => (self.y[0].norm() > 1e-12).then(|| -self.y[1] / (self.y[0] * self.y[0])),
        }
    }

    /// `|F|` and `|1/(F^2-1)|`, the `mu`-free parts of `|g dh|` and `|dh/g|`.
    fn densities(&self) -> (f64, f64) {
        let a = self.y[0];
        match self.rep {
            Rep::F => (a.norm(), 1.0 / (a * a - 1.0).norm()),
            Rep::V => (1.0 / a.norm(), (a * a / (1.0 - a * a)).norm()),
        }
    }
}

fn rhs(st: &CState) -> [C; 5] {
    let (a, da) = (st.y[0], st.y[1]);
    match st.rep {
        Rep::F => [da, 6.0 * a * a - 2.0, a, 1.0 / (a * a - 1.0), da / (a * a - 1.0)],
        Rep::V => {
            let w = 1.0 - a * a;
            [da, 2.0 - 6.0 * a * a, 1.0 / a, a * a / w, -da / w]
        }
    }
}

fn advance(s: C, ds: C, st: &CState, tol: &OdeTolerance) -> Result<CState> {
    let start = if st.y[0].norm() > 2.0 { st.convert().unwrap_or(*st) } else { *st };
    let go = |s0: CState| {
        integrate_segment(|_, y: &[C; 5]| rhs(&CState { rep: s0.rep, y: *y }), s, s + ds, s0.y, tol)
            .map(|(y, _)| CState { rep: s0.rep, y })
    };
    match go(start) {
        Ok(v) => Ok(v),
        Err(e) => match start.convert() {
            Some(alt) => go(alt),
            None => Err(e),
        },
    }
}

/// `X` from the raw integrals for a given `mu`.
fn position(raw: [C; 3], mu: f64) -> [f64; 3] {
    let mb = mu * beta();
    let g = 4.0 * mb * raw[0];
    let h = raw[1] / mb;
    [(0.5 * (g - h)).re, (0.5 * I * (g + h)).re, raw[2].re]
}

/// Raw cycle integrals of `F ds`, `ds / (F^2 - 1)` and `dh` over the two
/// generating cycles, horizontal then vertical.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CostaCycles {
    pub horizontal: [C; 3],
    pub vertical: [C; 3],
}

impl CostaCycles {
    pub fn compute(tol: &OdeTolerance) -> Result<Self> {
        let om = lemniscate_omega();
        let s0 = C::new(om, om);
        let root = CState { rep: Rep::F, y: [C::new(0.0, 0.0); 5] };
        let run = |start: C, dir: C| -> Result<[C; 3]> {
            let mut st = advance(s0, start - s0, &root, tol)?;
            st.y[2] = C::new(0.0, 0.0);
            st.y[3] = C::new(0.0, 0.0);
            st.y[4] = C::new(0.0, 0.0);
            let pieces = 16;
            let mut s = start;
            for _ in 0..pieces {
                let ds = dir * (2.0 * om / pieces as f64);
                st = advance(s, ds, &st, tol)?;
                s += ds;
            }
            Ok(st.raw())
        };
        Ok(CostaCycles {
            horizontal: run(C::new(om, 0.5 * om), C::new(1.0, 0.0))?,
            vertical: run(C::new(0.5 * om, om), I)?,
        })
    }

    /// Real period vectors of both cycles at `mu`.
    pub fn periods(&self, mu: f64) -> [[f64; 3]; 2] {
        [position(self.horizontal, mu), position(self.vertical, mu)]
    }

    /// Largest period component divided by the size of the `mu`-weighted terms.
    pub fn relative_gap(&self, mu: f64) -> f64 {
        let mb = mu * beta();
        let size = |r: [C; 3]| 0.5 * ((4.0 * mb * r[0]).norm() + (r[1] / mb).norm());
        let p = self.periods(mu);
        let worst = p.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()));
        worst / size(self.horizontal).max(size(self.vertical))
    }
}

/// Solves for `mu0` by bisection on the `x1` period of the horizontal cycle.
pub fn costa_mu0(tol: &OdeTolerance) -> Result<(f64, CostaCycles)> {
    let cyc = CostaCycles::compute(tol)?;
    let per = |mu: f64| cyc.periods(mu)[0][0];
    let (mut lo, mut hi) = (0.5, 2.0);
    let (flo, fhi) = (per(lo), per(hi));
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange(format!("Costa period keeps its sign on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if per(mid).signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 * hi {
            break;
        }
    }
    Ok((0.5 * (lo + hi), cyc))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CostaConfig {
    /// Grid cells per side, rounded up to a multiple of 4.
    pub cells: usize,
    /// End hole radius as a fraction of `omega`.
    pub hole_radius: f64,
    pub ode: OdeTolerance,
    pub audit: bool,
    pub threads: usize,
}

impl Default for CostaConfig {
    fn default() -> Self {
        CostaConfig {
            cells: 96,
            hole_radius: 0.2,
            ode: OdeTolerance::default(),
            audit: true,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CostaKind {
    /// Complete surface on the torus, `mu = mu0`.
    Closed,
    /// Open piece over the diamond around the catenoid end at `omega`.
    Open,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CostaSurface {
    pub mesh: SurfaceMesh,
    pub mu: f64,
    pub mu0: f64,
    pub kind: CostaKind,
    /// Set for open pieces with `mu < mu0`.
    pub below_mu0: bool,
    /// `CostaCycles::relative_gap` at `mu`.
    pub period_gap: f64,
    /// Largest non-tree edge disagreement relative to scale.
    pub cycle_residual: f64,
}

fn cells(cfg: &CostaConfig) -> usize {
    cfg.cells.max(8).div_ceil(4) * 4
}

/// Costa's surface for `mu = mu0` (pass `None`), or the open piece for any
/// other `mu > 0`.
pub fn costa(mu: Option<f64>, cfg: &CostaConfig) -> Result<CostaSurface> {
    if let Some(m) = mu {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidParameter(format!("mu = {m} must be positive")));
        }
    }
    if !(cfg.hole_radius > 0.0 && cfg.hole_radius < 0.45) {
        return Err(Error::InvalidParameter("hole radius must lie in (0, 0.45) omega".into()));
    }
    let (mu0, cyc) = costa_mu0(&cfg.ode)?;
    match mu {
        Some(m) if (m - mu0).abs() > 1e-12 * mu0 => open_piece(m, mu0, &cyc, cfg),
        _ => closed(mu0, &cyc, cfg),
    }
}

fn build_mesh(
    g: &Graph,
    states: &[Option<CState>],
    mu: f64,
    base: [C; 3],
    triangles: Vec<[usize; 3]>,
) -> SurfaceMesh {
    let mut mesh = SurfaceMesh::default();
    let mb = mu * beta();
    for (i, st) in states.iter().enumerate() {
        match st {
            Some(s) => {
                let r = s.raw();
                mesh.vertices.push(position([r[0] - base[0], r[1] - base[1], r[2] - base[2]], mu));
                mesh.gauss.push(normal_from_gauss(s.f_prime().map(|fp| mb * fp)));
                let (a, b) = s.densities();
                mesh.metric_factor.push(0.5 * (4.0 * mb.norm() * a + b / mb.norm()));
            }
            None => {
                mesh.vertices.push([f64::NAN; 3]);
                mesh.gauss.push([0.0, 0.0, 1.0]);
                mesh.metric_factor.push(f64::NAN);
            }
        }
        mesh.param.push(g.params[i]);
        mesh.boundary_tag.push(BoundaryTag::Interior);
    }
    mesh.triangles = triangles
        .into_iter()
        .filter(|t| t.iter().all(|&v| states[v].is_some()))
        .collect();
    mesh.compact();
    let boundary = mesh.boundary_vertices();
    for (i, t) in mesh.boundary_tag.iter_mut().enumerate() {
        if boundary[i] {
            *t = BoundaryTag::EndHole;
        }
    }
    mesh
}

fn closed(mu0: f64, cyc: &CostaCycles, cfg: &CostaConfig) -> Result<CostaSurface> {
    let om = lemniscate_omega();
    let n = cells(cfg);
    let h = 2.0 * om / n as f64;
    let id = |j: usize, k: usize| (k % n) * n + (j % n);
    let mut params = Vec::with_capacity(n * n);
    for k in 0..n {
        for j in 0..n {
            params.push(C::new(j as f64 * h, k as f64 * h));
        }
    }
    let r = cfg.hole_radius * om;
    let ends = [C::new(0.0, 0.0), C::new(om, 0.0), C::new(0.0, om)];
    let kept = params
        .iter()
        .map(|&s| {
            ends.iter().all(|&e| {
                let d = s - e;
                // Distance on the torus of periods 2 omega, 2 i omega.
                let dx = d.re - 2.0 * om * (d.re / (2.0 * om)).round();
                let dy = d.im - 2.0 * om * (d.im / (2.0 * om)).round();
                dx.hypot(dy) >= r
            })
        })
        .collect();
    let mut edges = vec![Vec::new(); n * n];
    for k in 0..n {
        for j in 0..n {
            let a = id(j, k);
            for (b, du) in [(id(j + 1, k), C::new(h, 0.0)), (id(j, k + 1), C::new(0.0, h))] {
                edges[a].push((b, du));
                edges[b].push((a, -du));
            }
        }
    }
    let g = Graph { params, kept, edges };
    let root = CState { rep: Rep::F, y: [C::new(0.0, 0.0); 5] };
    let step = |s: C, ds: C, st: &CState| advance(s, ds, st, &cfg.ode);
    let sp = spread(&g, id(n / 2, n / 2), root, |_, _| false, step, cfg.threads)?;
    let mut triangles = Vec::with_capacity(2 * n * n);
    for k in 0..n {
        for j in 0..n {
            let (a, b, c, d) = (id(j, k), id(j + 1, k), id(j + 1, k + 1), id(j, k + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    let zero = [C::new(0.0, 0.0); 3];
    let mesh = build_mesh(&g, &sp.states, mu0, zero, triangles);
    let scale = mesh.scale().max(1e-300);
    let cycle_residual = if cfg.audit {
        audit(
            &g,
            &sp,
            |_, _| false,
            step,
            |a: &CState, b: &CState| {
                let (pa, pb) = (position(a.raw(), mu0), position(b.raw(), mu0));
                ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2) + (pa[2] - pb[2]).powi(2)).sqrt()
            },
            cfg.threads,
        )? / scale
    } else {
        f64::NAN
    };
    Ok(CostaSurface {
        mesh,
        mu: mu0,
        mu0,
        kind: CostaKind::Closed,
        below_mu0: false,
        period_gap: cyc.relative_gap(mu0),
        cycle_residual,
    })
}

fn open_piece(mu: f64, mu0: f64, cyc: &CostaCycles, cfg: &CostaConfig) -> Result<CostaSurface> {
    let om = lemniscate_omega();
    let n = cells(cfg);
    // s = omega + omega ((a - b) + i (a + b)) with a, b in [-1/2, 1/2].
    let at = |j: usize, k: usize| {
        let a = -0.5 + j as f64 / n as f64;
        let b = -0.5 + k as f64 / n as f64;
        C::new(om + om * (a - b), om * (a + b))
    };
    let id = |j: usize, k: usize| k * (n + 1) + j;
    let mut params = Vec::with_capacity((n + 1) * (n + 1));
    for k in 0..=n {
        for j in 0..=n {
            params.push(at(j, k));
        }
    }
    let r = cfg.hole_radius * om;
    let ends = [C::new(om, 0.0), C::new(0.0, 0.0), C::new(2.0 * om, 0.0)];
    let kept = params.iter().map(|&s| ends.iter().all(|&e| (s - e).norm() >= r)).collect();
    let mut edges = vec![Vec::new(); params.len()];
    for k in 0..=n {
        for j in 0..=n {
            let a = id(j, k);
            if j < n {
                let b = id(j + 1, k);
                edges[a].push((b, params[b] - params[a]));
                edges[b].push((a, params[a] - params[b]));
            }
            if k < n {
                let b = id(j, k + 1);
                edges[a].push((b, params[b] - params[a]));
                edges[b].push((a, params[a] - params[b]));
            }
        }
    }
    let g = Graph { params, kept, edges };
    let root = CState { rep: Rep::F, y: [C::new(0.0, 0.0); 5] };
    let step = |s: C, ds: C, st: &CState| advance(s, ds, st, &cfg.ode);
    // The corner a = b = 1/2 is omega + i omega, where F = F' = 0.
    let sp = spread(&g, id(n, n), root, |_, _| false, step, cfg.threads)?;
    let base_id = id(n / 4, 3 * n / 4);
    let mirror_id = id(3 * n / 4, n / 4);
    let (Some(base), Some(mirror)) = (sp.states[base_id], sp.states[mirror_id]) else {
        return Err(Error::Mesh("base points of the open Costa piece were excised".into()));
    };
    let b = base.raw();
    let m = mirror.raw();
    let mut triangles = Vec::with_capacity(2 * n * n);
    for k in 0..n {
        for j in 0..n {
            let (a, bb, c, d) = (id(j, k), id(j + 1, k), id(j + 1, k + 1), id(j, k + 1));
            triangles.push([a, bb, c]);
            triangles.push([a, c, d]);
        }
    }
    let mut mesh = build_mesh(&g, &sp.states, mu, b, triangles);
    // Put the axis of the half turn s -> 2 omega - s on the x3 axis.
    let shift = position([m[0] - b[0], m[1] - b[1], m[2] - b[2]], mu);
    mesh.translate([-0.5 * shift[0], -0.5 * shift[1], -0.5 * shift[2]]);
    let scale = mesh.scale().max(1e-300);
    let cycle_residual = if cfg.audit {
        audit(
            &g,
            &sp,
            |_, _| false,
            step,
            |a: &CState, b: &CState| {
                let (pa, pb) = (position(a.raw(), mu), position(b.raw(), mu));
                ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2) + (pa[2] - pb[2]).powi(2)).sqrt()
            },
            cfg.threads,
        )? / scale
    } else {
        f64::NAN
    };
    Ok(CostaSurface {
        mesh,
        mu,
        mu0,
        kind: CostaKind::Open,
        below_mu0: mu < mu0,
        period_gap: cyc.relative_gap(mu),
        cycle_residual,
    })
}

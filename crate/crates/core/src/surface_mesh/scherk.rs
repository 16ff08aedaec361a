//! Weierstrass data of the Scherk-Costa surfaces on the uniformising torus and
//! the immersion of the fundamental piece.
//!
//! The compactified surface is the torus `w^2 = P(z) / (z + i lambda)^2` with
//! `P(z) = -i z (z - e^{i rho}) (z + e^{-i rho})`. Rather than tracking sheets
//! in the `z` plane we work in its flat coordinate `u`, in which `z(u)` solves
//! `z'' = P'(z) / 2` with `z(0) = z'(0) = 0`. Near `z = inf` the chart switches
//! to `v = 1 / z`, which solves the analogous equation for `Q(v) = v^4 P(1/v)`.
//!
//! The rectangle `[0, K1] x [-K2, 0]` covers the half plane `Re z > 0` twice.
//! Its top edge runs up the positive imaginary axis to `z = inf`, its left edge
//! runs down the negative imaginary axis through the middle end, and the centre
//! of the rectangle sits over the branch point `e^{i rho}`. The point reflection
//! about the centre swaps the two sheets.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::lattice::{audit, graded_axis, segments_cross, spread, Bump, Graph};
use super::ode::{integrate_segment, OdeTolerance};
use super::{normal_from_gauss, BoundaryTag, SurfaceMesh};
use crate::param_algebra::{EndConfiguration, GeometricParams};
use crate::periods::{f, f_tilde, residue_middle_end, residue_side_end};
use crate::quadrature::{integrate_adaptive, integrate_halfline_split, QuadratureConfig};
use crate::{Error, Result};

type C = Complex64;
const I: C = C::new(0.0, 1.0);

/// Weierstrass data `g = c z' / (z + i lambda)`, `dh = dz / ((z - x)(z + conj x))`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ScForms {
    pub rho: f64,
    pub lambda: f64,
    pub x: C,
    /// López-Ros factor, the square root of the balance value.
    pub c: f64,
    s: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rep {
    Z,
    V,
}

/// Chart value, its `u` derivative and the three running integrals.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ScState {
    pub rep: Rep,
    pub y: [C; 5],
}

impl ScState {
    pub fn position(&self) -> [f64; 3] {
        [self.y[2].re, self.y[3].re, self.y[4].re]
    }

    /// `z` and `z'`, or `None` at `z = inf`.
    pub fn z(&self) -> Option<(C, C)> {
        match self.rep {
            Rep::Z => Some((self.y[0], self.y[1])),
            Rep::V => {
                let v = self.y[0];
                if v.norm() < 1e-150 {
                    None
                } else {
                    Some((1.0 / v, -self.y[1] / (v * v)))
                }
            }
        }
    }

    fn convert(&self) -> Option<ScState> {
        let (a, da) = (self.y[0], self.y[1]);
        if a.norm() < 1e-150 {
            return None;
        }
        let rep = if self.rep == Rep::Z { Rep::V } else { Rep::Z };
        let mut y = self.y;
        y[0] = 1.0 / a;
        y[1] = -da / (a * a);
        Some(ScState { rep, y })
    }
}

impl ScForms {
    /// `c_balance` is the balance value; the forms use its square root.
    pub fn new(p: &GeometricParams, end: &EndConfiguration, c_balance: f64) -> Result<Self> {
        if !(c_balance > 0.0 && c_balance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "c = {c_balance} must be positive and finite"
            )));
        }
        Ok(ScForms { rho: p.rho, lambda: p.lambda, x: end.x(), c: c_balance.sqrt(), s: p.rho.sin() })
    }

    pub fn p(&self, z: C) -> C {
        -I * z * z * z - 2.0 * self.s * z * z + I * z
    }

    pub fn dp(&self, z: C) -> C {
        -3.0 * I * z * z - 4.0 * self.s * z + I
    }

    /// `Q(v) / v` with `Q(v) = v^4 P(1/v)`.
    fn q_red(&self, v: C) -> C {
        -I - 2.0 * self.s * v + I * v * v
    }

    fn dq(&self, v: C) -> C {
        -I - 4.0 * self.s * v + 3.0 * I * v * v
    }

    /// `w = z' / (z + i lambda)`, so that `w^2 = P(z) / (z + i lambda)^2`.
    pub fn w(&self, z: C, zp: C) -> C {
        zp / (z + I * self.lambda)
    }

    /// `|g|`, which does not depend on the sheet.
    pub fn gauss_modulus(&self, z: C) -> f64 {
        self.c * self.p(z).norm().sqrt() / (z + I * self.lambda).norm()
    }

    /// `g dh`, `dh / g` and `dh` per unit `du`.
    fn densities(&self, st: &ScState) -> (C, C, C) {
        let (lam, x, xc) = (self.lambda, self.x, self.x.conj());
        let (a, da) = (st.y[0], st.y[1]);
        match st.rep {
            Rep::Z => {
                let den = (a - x) * (a + xc);
                let ml = a + I * lam;
                (self.c * self.p(a) / (ml * den), ml / (self.c * den), da / den)
            }
            Rep::V => {
                let den = (1.0 - x * a) * (1.0 + xc * a);
                let ml = 1.0 + I * lam * a;
                (self.c * self.q_red(a) / (ml * den), a * ml / (self.c * den), -da / den)
            }
        }
    }

    pub(crate) fn rhs(&self, st: &ScState) -> [C; 5] {
        let (gd, hd, dh) = self.densities(st);
        let acc = match st.rep {
            Rep::Z => 0.5 * self.dp(st.y[0]),
            Rep::V => 0.5 * self.dq(st.y[0]),
        };
        [st.y[1], acc, 0.5 * (gd - hd), 0.5 * I * (gd + hd), dh]
    }

    /// Gauss map, `None` where it is infinite.
    pub(crate) fn gauss(&self, st: &ScState) -> Option<C> {
        let (a, da) = (st.y[0], st.y[1]);
        let g = match st.rep {
            Rep::Z => self.c * da / (a + I * self.lambda),
            Rep::V => {
                if a.norm() < 1e-12 {
                    return None;
                }
                -self.c * da / (a * (1.0 + I * self.lambda * a))
            }
        };
        g.norm().is_finite().then_some(g)
    }

    /// `|dX/du| = (|g dh| + |dh / g|) / 2`.
    pub(crate) fn metric_factor(&self, st: &ScState) -> f64 {
        let (gd, hd, _) = self.densities(st);
        0.5 * (gd.norm() + hd.norm())
    }

    /// Relative violation of the first integral `z'^2 = P(z)`.
    pub(crate) fn first_integral_error(&self, st: &ScState) -> f64 {
        let (a, da) = (st.y[0], st.y[1]);
        let target = match st.rep {
            Rep::Z => self.p(a),
            Rep::V => a * self.q_red(a),
        };
        (da * da - target).norm() / (1.0 + target.norm())
    }

    /// Advances a state along the straight segment `u -> u + du`, choosing the
    /// chart by the size of `z` and falling back to the other chart on failure.
    pub(crate) fn advance(&self, u: C, du: C, st: &ScState, tol: &OdeTolerance) -> Result<ScState> {
        let start = match st.rep {
            Rep::Z if st.y[0].norm() > 2.0 => st.convert().unwrap_or(*st),
            Rep::V if st.y[0].norm() > 2.0 => st.convert().unwrap_or(*st),
            _ => *st,
        };
        let go = |s0: ScState| {
            integrate_segment(|_, y: &[C; 5]| self.rhs(&ScState { rep: s0.rep, y: *y }), u, u + du, s0.y, tol)
                .map(|(y, _)| ScState { rep: s0.rep, y })
        };
        match go(start) {
            Ok(s) => Ok(s),
            Err(e) => match start.convert() {
                Some(alt) => go(alt),
                None => Err(e),
            },
        }
    }
}

/// A point of the torus given by its flat coordinate.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DomainPoint {
    pub u: C,
    /// `None` at `z = inf`.
    pub z: Option<C>,
    pub z_prime: Option<C>,
    /// `z' / (z + i lambda)`, the second coordinate of the torus.
    pub w: Option<C>,
}

/// Flat coordinates of the landmarks on the fundamental rectangle.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TorusChart {
    pub k1: f64,
    pub k2: f64,
    /// Centre of the rectangle, over `z = e^{i rho}`.
    pub u_center: C,
    /// Side end over `x` on the first sheet; its twin is the point reflection.
    pub u_side: C,
    /// Middle end on the left edge; its twin sits on the right edge.
    pub u_middle: C,
    /// `|z(u_center) - e^{i rho}|`.
    pub center_error: f64,
}

impl TorusChart {
    pub fn new(forms: &ScForms, quad: &QuadratureConfig, tol: &OdeTolerance) -> Result<Self> {
        let rho = forms.rho;
        let k1 = integrate_halfline_split(|t| 1.0 / f_tilde(t, rho), quad);
        let k2 = integrate_halfline_split(|t| 1.0 / f(t, rho), quad);
        let vm = integrate_adaptive(|t| 1.0 / f(t, rho), 0.0, forms.lambda, quad);
        if !(k1.converged && k2.converged && vm.converged) {
            return Err(Error::Mesh("torus half periods did not converge".into()));
        }
        let (k1, k2) = (k1.value, k2.value);
        let u_center = C::new(0.5 * k1, -0.5 * k2);
        let zc = z_along(forms, C::new(0.0, 0.0), u_center, tol)?;
        let eip = C::new(rho.cos(), rho.sin());
        let center_error = (zc.0 - eip).norm();
        if center_error > 1e-6 {
            return Err(Error::Mesh(format!("rectangle centre maps {center_error:e} away from the branch point")));
        }
        // z - e^{i rho} ~ P'(e^{i rho}) (u - u_c)^2 / 4 near the centre.
        let mut u = u_center + (4.0 * (forms.x - eip) / forms.dp(eip)).sqrt();
        let mut converged = false;
        for _ in 0..60 {
            let (z, zp) = z_from(forms, u_center, zc, u, tol)?;
            let step = (z - forms.x) / zp;
            u -= step;
            if step.norm() < 1e-14 * (1.0 + u.norm()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence("locating the side end on the torus".into()));
        }
        Ok(TorusChart { k1, k2, u_center, u_side: u, u_middle: C::new(0.0, -vm.value), center_error })
    }

    /// Point reflection about the centre, the sheet swap.
    pub fn iota(&self, u: C) -> C {
        2.0 * self.u_center - u
    }

    /// Evaluates `z`, `z'` and `w` by integrating from the corner `u = 0`.
    pub fn eval(&self, forms: &ScForms, u: C, tol: &OdeTolerance) -> Result<DomainPoint> {
        let st = ScState { rep: Rep::Z, y: [C::new(0.0, 0.0); 5] };
        let st = forms.advance(C::new(0.0, 0.0), u, &st, tol)?;
        let zz = st.z();
        Ok(DomainPoint {
            u,
            z: zz.map(|p| p.0),
            z_prime: zz.map(|p| p.1),
            w: zz.map(|(z, zp)| forms.w(z, zp)),
        })
    }
}

fn z_along(forms: &ScForms, u0: C, u1: C, tol: &OdeTolerance) -> Result<(C, C)> {
    z_from(forms, u0, (C::new(0.0, 0.0), C::new(0.0, 0.0)), u1, tol)
}

fn z_from(forms: &ScForms, u0: C, z0: (C, C), u1: C, tol: &OdeTolerance) -> Result<(C, C)> {
    let (y, _) = integrate_segment(|_, y: &[C; 2]| [y[1], 0.5 * forms.dp(y[0])], u0, u1, [z0.0, z0.1], tol)?;
    Ok((y[0], y[1]))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridConfig {
    /// Cells across the rectangle at the coarsest spacing.
    pub cells: usize,
    /// Grid cells per hole radius near the ends.
    pub cells_per_hole: f64,
    /// Side-end hole radius as a fraction of the distance to the branch point.
    pub hole_fraction: f64,
    pub ode: OdeTolerance,
    pub quad: QuadratureConfig,
    /// Re-integrate every edge outside the spanning tree.
    pub audit: bool,
    pub threads: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            cells: 48,
            cells_per_hole: 6.0,
            hole_fraction: 0.5,
            ode: OdeTolerance::default(),
            quad: QuadratureConfig::default(),
            audit: true,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

impl GridConfig {
    /// Same layout with every spacing halved.
    pub fn refined(&self) -> Self {
        GridConfig { cells: self.cells * 2, cells_per_hole: self.cells_per_hole * 2.0, ..self.clone() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImmersionDiagnostics {
    pub chart: TorusChart,
    pub hole_side: f64,
    pub hole_middle: f64,
    pub columns: usize,
    pub rows: usize,
    /// Largest disagreement on edges outside the spanning tree, relative to scale.
    pub cycle_residual: f64,
    /// Difference of the two lifts across the cut between the side ends.
    pub cut_jump: [f64; 3],
    pub cut_jump_spread: f64,
    /// `X(iota u) + (x1, x2, -x3)(u)`, constant when the sheet swap is a
    /// half turn about a vertical axis.
    pub half_turn_offset: [f64; 3],
    pub half_turn_residual: f64,
    /// `X` at `u = K1` minus `X` at `u = -i K2`; both are the point at infinity.
    pub corner_offset: [f64; 3],
    /// Mean `x2` along the second horizontal line.
    pub middle_separation: f64,
    /// Largest distance of a tagged vertex from its line.
    pub line_residual: f64,
    pub first_integral_drift: f64,
    /// Side-end residue from the closed form.
    pub side_period: [f64; 3],
    pub middle_period: [f64; 3],
    pub scale: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Immersion {
    pub mesh: SurfaceMesh,
    pub diagnostics: ImmersionDiagnostics,
    pub params: GeometricParams,
    pub end: EndConfiguration,
    /// Balance value used; the forms carry its square root.
    pub c: f64,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm3(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Immerses the fundamental piece over a graded grid of the rectangle.
///
/// `c` is the balance value (the square of the López-Ros factor). Periods need
/// not close: the piece is single valued on the rectangle once the segment
/// between the two side ends is cut, and the two lifts along the cut differ by
/// the side-end residue.
pub fn immerse(p: &GeometricParams, end: &EndConfiguration, c: f64, grid: &GridConfig) -> Result<Immersion> {
    if grid.cells < 4 || !(grid.cells_per_hole >= 1.0) || !(grid.hole_fraction > 0.0 && grid.hole_fraction < 0.9) {
        return Err(Error::InvalidParameter(
            "grid needs cells >= 4, cells_per_hole >= 1 and hole_fraction in (0, 0.9)".into(),
        ));
    }
    let forms = ScForms::new(p, end, c)?;
    let chart = TorusChart::new(&forms, &grid.quad, &grid.ode)?;
    let (k1, k2) = (chart.k1, chart.k2);
    let uc = chart.u_center;
    let ux = chart.u_side;
    let ux2 = chart.iota(ux);
    let um = chart.u_middle;
    let um2 = chart.iota(um);
    let vm = -um.im;
    let dlen = (ux - uc).norm();
    let r_side = grid.hole_fraction * dlen;
    let r_mid = r_side.min(0.4 * (k2 - vm)).min(0.4 * vm).min(0.2 * k1);

    let m = grid.cells_per_hole;
    let h0 = k1 / grid.cells as f64;
    let rc = (h0 / (r_side / m)).max(1.0);
    let rm = (h0 / (r_mid / m)).max(1.0);
    let wc = 1.5 * (dlen + r_side);
    let xs = graded_axis(
        k1,
        grid.cells,
        &[
            Bump { center: 0.5 * k1, width: wc, ratio: rc },
            Bump { center: 0.0, width: 2.0 * r_mid, ratio: rm },
            Bump { center: k1, width: 2.0 * r_mid, ratio: rm },
        ],
    );
    let ys = graded_axis(
        k2,
        ((grid.cells as f64) * k2 / k1).round().max(4.0) as usize,
        &[
            Bump { center: 0.5 * k2, width: wc, ratio: rc },
            Bump { center: vm, width: 2.0 * r_mid, ratio: rm },
            Bump { center: k2 - vm, width: 2.0 * r_mid, ratio: rm },
        ],
    );
    let (nx, ny) = (xs.len() - 1, ys.len() - 1);
    let id = |j: usize, k: usize| k * (nx + 1) + j;
    let mut params = Vec::with_capacity((nx + 1) * (ny + 1));
    for &y in &ys {
        for &x in &xs {
            params.push(C::new(x, -y));
        }
    }
    let kept: Vec<bool> = params
        .iter()
        .map(|&u| {
            (u - ux).norm() >= r_side
                && (u - ux2).norm() >= r_side
                && (u - um).norm() >= r_mid
                && (u - um2).norm() >= r_mid
        })
        .collect();
    let mut edges = vec![Vec::new(); params.len()];
    for k in 0..=ny {
        for j in 0..=nx {
            let a = id(j, k);
            if j < nx {
                let b = id(j + 1, k);
                edges[a].push((b, params[b] - params[a]));
                edges[b].push((a, params[a] - params[b]));
            }
            if k < ny {
                let b = id(j, k + 1);
                edges[a].push((b, params[b] - params[a]));
                edges[b].push((a, params[a] - params[b]));
            }
        }
    }
    let graph = Graph { params, kept, edges };
    let blocked = |i: usize, j: usize| segments_cross(graph.params[i], graph.params[j], ux, ux2);
    let step = |u: C, du: C, s: &ScState| forms.advance(u, du, s, &grid.ode);
    let root = ScState { rep: Rep::Z, y: [C::new(0.0, 0.0); 5] };
    let sp = spread(&graph, id(0, 0), root, blocked, step, grid.threads)?;

    let mut mesh = SurfaceMesh::default();
    let n = graph.params.len();
    let mut first_integral_drift = 0.0f64;
    for i in 0..n {
        let (pos, normal, mf) = match &sp.states[i] {
            Some(s) => {
                first_integral_drift = first_integral_drift.max(forms.first_integral_error(s));
                (s.position(), normal_from_gauss(forms.gauss(s)), forms.metric_factor(s))
            }
            None => ([f64::NAN; 3], [0.0, 0.0, 1.0], f64::NAN),
        };
        mesh.vertices.push(pos);
        mesh.gauss.push(normal);
        mesh.param.push(graph.params[i]);
        mesh.metric_factor.push(mf);
        mesh.boundary_tag.push(BoundaryTag::Interior);
    }

    // Tags along the rectangle edges.
    for k in 0..=ny {
        for j in 0..=nx {
            let tag = if k == 0 || k == ny {
                BoundaryTag::SegmentL2
            } else if j == 0 {
                if ys[k] < vm { BoundaryTag::LineL1 } else { BoundaryTag::LineL1Prime }
            } else if j == nx {
                if ys[k] > k2 - vm { BoundaryTag::LineL1 } else { BoundaryTag::LineL1Prime }
            } else {
                continue;
            };
            mesh.boundary_tag[id(j, k)] = tag;
        }
    }

    let side = |u: C| {
        let d = ux2 - ux;
        let w = u - ux;
        d.re * w.im - d.im * w.re
    };
    let has = |i: usize| sp.states[i].is_some();
    let mut lifts: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut jumps: Vec<[f64; 3]> = Vec::new();
    for k in 0..ny {
        for j in 0..nx {
            let (a, b, cc, d) = (id(j, k), id(j + 1, k), id(j + 1, k + 1), id(j, k + 1));
            for tri in [[a, d, cc], [a, cc, b]] {
                if !tri.iter().all(|&v| has(v)) {
                    continue;
                }
                let crossing = (0..3).any(|e| {
                    let (p0, p1) = (graph.params[tri[e]], graph.params[tri[(e + 1) % 3]]);
                    segments_cross(p0, p1, ux, ux2)
                });
                let mut t = tri;
                if crossing {
                    for slot in 0..3 {
                        let v = tri[slot];
                        if side(graph.params[v]) >= 0.0 {
                            continue;
                        }
                        let dup = match lifts.get(&v) {
                            Some(&d) => d,
                            None => {
                                let src = tri
                                    .iter()
                                    .copied()
                                    .find(|&w| side(graph.params[w]) >= 0.0 && segments_cross(graph.params[w], graph.params[v], ux, ux2))
                                    .ok_or_else(|| Error::Mesh("cut triangle without a crossing edge".into()))?;
                                let s = forms.advance(
                                    graph.params[src],
                                    graph.params[v] - graph.params[src],
                                    sp.states[src].as_ref().unwrap(),
                                    &grid.ode,
                                )?;
                                let pos = s.position();
                                jumps.push(sub(pos, mesh.vertices[v]));
                                let d = mesh.vertices.len();
                                mesh.vertices.push(pos);
                                mesh.gauss.push(normal_from_gauss(forms.gauss(&s)));
                                mesh.param.push(graph.params[v]);
                                mesh.metric_factor.push(forms.metric_factor(&s));
                                mesh.boundary_tag.push(BoundaryTag::EndCut);
                                mesh.boundary_tag[v] = BoundaryTag::EndCut;
                                lifts.insert(v, d);
                                d
                            }
                        };
                        t[slot] = dup;
                    }
                }
                mesh.triangles.push(t);
            }
        }
    }
    if jumps.is_empty() {
        return Err(Error::Mesh("grid too coarse to resolve the cut between the side ends".into()));
    }

    let scale = mesh
        .triangles
        .iter()
        .flatten()
        .map(|&i| norm3(mesh.vertices[i]))
        .fold(0.0f64, f64::max)
        .max(1e-300);

    let cycle_residual = if grid.audit {
        audit(
            &graph,
            &sp,
            blocked,
            step,
            |a: &ScState, b: &ScState| norm3(sub(a.position(), b.position())),
            grid.threads,
        )? / scale
    } else {
        f64::NAN
    };

    let mut cut_jump = [0.0; 3];
    for j in &jumps {
        for k in 0..3 {
            cut_jump[k] += j[k] / jumps.len() as f64;
        }
    }
    let cut_jump_spread = jumps.iter().map(|j| norm3(sub(*j, cut_jump))).fold(0.0, f64::max);

    // Sheet swap: skip vertices on the cut line, whose lift is one sided.
    let mut offsets = Vec::new();
    for k in 0..=ny {
        for j in 0..=nx {
            let (a, b) = (id(j, k), id(nx - j, ny - k));
            if !(has(a) && has(b)) || side(graph.params[a]).abs() < 1e-12 {
                continue;
            }
            let (xa, xb) = (mesh.vertices[a], mesh.vertices[b]);
            offsets.push([xb[0] + xa[0], xb[1] + xa[1], xb[2] - xa[2]]);
        }
    }
    let mut half_turn_offset = [0.0; 3];
    for o in &offsets {
        for k in 0..3 {
            half_turn_offset[k] += o[k] / offsets.len().max(1) as f64;
        }
    }
    let half_turn_residual =
        offsets.iter().map(|o| norm3(sub(*o, half_turn_offset))).fold(0.0, f64::max) / scale;

    let corner_offset = match (has(id(nx, 0)), has(id(0, ny))) {
        (true, true) => sub(mesh.vertices[id(nx, 0)], mesh.vertices[id(0, ny)]),
        _ => [f64::NAN; 3],
    };

    let mut line_residual = 0.0f64;
    let mut sep = Vec::new();
    for k in 0..=ny {
        for j in [0, nx] {
            let i = id(j, k);
            if !has(i) || k == 0 || k == ny {
                continue;
            }
            let x = mesh.vertices[i];
            if j == 0 {
                match mesh.boundary_tag[i] {
                    BoundaryTag::LineL1 => line_residual = line_residual.max(x[1].abs()).max(x[2].abs()),
                    BoundaryTag::LineL1Prime => {
                        line_residual = line_residual.max(x[2].abs());
                        sep.push(x[1]);
                    }
                    _ => {}
                }
            }
        }
    }
    for j in 0..=nx {
        let i = id(j, 0);
        if has(i) {
            let x = mesh.vertices[i];
            line_residual = line_residual.max(x[0].abs()).max(x[2].abs());
        }
    }
    let middle_separation = sep.iter().sum::<f64>() / sep.len().max(1) as f64;
    let spread_sep = sep.iter().map(|v| (v - middle_separation).abs()).fold(0.0, f64::max);
    line_residual = line_residual.max(spread_sep) / scale;

    // Orient triangles to agree with the Gauss map.
    let mut agree = 0.0;
    for t in &mesh.triangles {
        let (a, b, cc) = (mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
        let e1 = sub(b, a);
        let e2 = sub(cc, a);
        let nrm = [e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]];
        let g = mesh.gauss[t[0]];
        agree += nrm[0] * g[0] + nrm[1] * g[1] + nrm[2] * g[2];
    }
    if agree < 0.0 {
        for t in &mut mesh.triangles {
            t.swap(1, 2);
        }
    }

    mesh.compact();
    let boundary = mesh.boundary_vertices();
    for i in 0..mesh.len() {
        if boundary[i] && mesh.boundary_tag[i] == BoundaryTag::Interior {
            mesh.boundary_tag[i] = BoundaryTag::EndHole;
        }
    }
    // Face the second line towards +x2 with a half turn about x1, a symmetry
    // of the complete surface.
    let (mut cut_jump, mut half_turn_offset, mut corner_offset, mut middle_separation) =
        (cut_jump, half_turn_offset, corner_offset, middle_separation);
    if middle_separation < 0.0 {
        mesh.transform(super::geometry::maps::ROT_X1, [0.0; 3]);
        for v in [&mut cut_jump, &mut half_turn_offset, &mut corner_offset] {
            v[1] = -v[1];
            v[2] = -v[2];
        }
        middle_separation = -middle_separation;
    }
    let side_period = residue_side_end(p, end, forms.c)?;
    mesh.period = cut_jump;
    let middle_period = residue_middle_end(p, end, forms.c);
    let scale_bbox = mesh.scale();
    Ok(Immersion {
        mesh,
        diagnostics: ImmersionDiagnostics {
            chart,
            hole_side: r_side,
            hole_middle: r_mid,
            columns: nx,
            rows: ny,
            cycle_residual,
            cut_jump,
            cut_jump_spread,
            half_turn_offset,
            half_turn_residual,
            corner_offset,
            middle_separation,
            line_residual,
            first_integral_drift,
            side_period,
            middle_period,
            scale: scale_bbox,
        },
        params: *p,
        end: *end,
        c,
    })
}

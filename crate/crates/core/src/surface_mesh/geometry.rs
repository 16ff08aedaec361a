//! Discrete geometry checks on meshes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::SurfaceMesh;

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Cotangent-Laplacian mean curvature `|H|` per vertex, with barycentric
/// areas. Vertices on the mesh boundary get `None`.
pub fn mean_curvature(mesh: &SurfaceMesh) -> Vec<Option<f64>> {
    let n = mesh.len();
    let mut lap = vec![[0.0f64; 3]; n];
    let mut area = vec![0.0f64; n];
    for t in &mesh.triangles {
        let p = [mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]];
        let a = 0.5 * norm(cross(sub(p[1], p[0]), sub(p[2], p[0])));
        for k in 0..3 {
            area[t[k]] += a / 3.0;
            // Angle at vertex k weights the opposite edge.
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let e1 = sub(p[i], p[k]);
            let e2 = sub(p[j], p[k]);
            let cot = dot(e1, e2) / norm(cross(e1, e2)).max(1e-300);
            let d = sub(p[j], p[i]);
            for c in 0..3 {
                lap[t[i]][c] += 0.5 * cot * d[c];
                lap[t[j]][c] -= 0.5 * cot * d[c];
            }
        }
    }
    let boundary = mesh.boundary_vertices();
    (0..n)
        .map(|v| {
            if boundary[v] || area[v] == 0.0 {
                None
            } else {
                Some(0.5 * norm(lap[v]) / area[v])
            }
        })
        .collect()
}

/// Largest `|H|` times the mesh scale over vertices accepted by `keep`.
pub fn max_mean_curvature<F: Fn(usize) -> bool>(mesh: &SurfaceMesh, keep: F) -> f64 {
    let s = mesh.scale();
    mean_curvature(mesh)
        .into_iter()
        .enumerate()
        .filter_map(|(i, h)| h.filter(|_| keep(i)))
        .fold(0.0, f64::max)
        * s
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MetricReport {
    pub edges: usize,
    /// Largest relative difference between chord length and `|dX/du| |du|`.
    pub max_relative_error: f64,
}

/// Compares every mesh edge with the length predicted by the induced metric.
pub fn metric_check(mesh: &SurfaceMesh) -> MetricReport {
    let mut worst = 0.0f64;
    let mut count = 0;
    for t in &mesh.triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            if a > b {
                continue;
            }
            let chord = norm(sub(mesh.vertices[a], mesh.vertices[b]));
            let pred = 0.5 * (mesh.metric_factor[a] + mesh.metric_factor[b]) * (mesh.param[a] - mesh.param[b]).norm();
            if pred > 0.0 {
                worst = worst.max((chord - pred).abs() / pred);
                count += 1;
            }
        }
    }
    MetricReport { edges: count, max_relative_error: worst }
}

/// Uniform hash of points for near-neighbour queries.
pub struct PointHash {
    cell: f64,
    map: HashMap<(i64, i64, i64), Vec<usize>>,
    points: Vec<[f64; 3]>,
}

impl PointHash {
    pub fn new(points: &[[f64; 3]], cell: f64) -> Self {
        let mut map: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            map.entry(Self::key(cell, p)).or_default().push(i);
        }
        PointHash { cell, map, points: points.to_vec() }
    }

    fn key(cell: f64, p: &[f64; 3]) -> (i64, i64, i64) {
        ((p[0] / cell).floor() as i64, (p[1] / cell).floor() as i64, (p[2] / cell).floor() as i64)
    }

    /// Nearest stored point within one cell of `q`, as `(index, distance)`.
    pub fn nearest(&self, q: &[f64; 3]) -> Option<(usize, f64)> {
        self.nearest_filtered(q, |_| true)
    }

    pub fn nearest_filtered<F: Fn(usize) -> bool>(&self, q: &[f64; 3], ok: F) -> Option<(usize, f64)> {
        let (kx, ky, kz) = Self::key(self.cell, q);
        let mut best: Option<(usize, f64)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(list) = self.map.get(&(kx + dx, ky + dy, kz + dz)) {
                        for &i in list {
                            if !ok(i) {
                                continue;
                            }
                            let d = norm(sub(self.points[i], *q));
                            if best.is_none_or(|b| d < b.1) {
                                best = Some((i, d));
                            }
                        }
                    }
                }
            }
        }
        best
    }
}

/// Largest distance from a transformed vertex to the nearest vertex, or
/// infinity if some image has no vertex within `tol`.
pub fn vertex_set_invariance<F: Fn([f64; 3]) -> [f64; 3]>(points: &[[f64; 3]], map: F, tol: f64) -> f64 {
    let hash = PointHash::new(points, tol);
    let mut worst = 0.0f64;
    for p in points {
        match hash.nearest(&map(*p)) {
            Some((_, d)) if d <= tol => worst = worst.max(d),
            _ => return f64::INFINITY,
        }
    }
    worst
}

/// Largest distance of the points from the line through `origin` along `dir`.
pub fn line_deviation(points: &[[f64; 3]], origin: [f64; 3], dir: [f64; 3]) -> f64 {
    let d = norm(dir);
    let u = [dir[0] / d, dir[1] / d, dir[2] / d];
    points
        .iter()
        .map(|p| {
            let w = sub(*p, origin);
            let along = dot(w, u);
            norm([w[0] - along * u[0], w[1] - along * u[1], w[2] - along * u[2]])
        })
        .fold(0.0, f64::max)
}

/// Reflections and rotations used throughout, as 3x3 matrices.
pub mod maps {
    pub type M3 = [[f64; 3]; 3];

    pub fn apply(m: &M3, v: [f64; 3]) -> [f64; 3] {
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn compose(a: &M3, b: &M3) -> M3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    /// Half turn about the `x1` axis.
    pub const ROT_X1: M3 = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
    /// Half turn about the `x3` axis.
    pub const ROT_X3: M3 = [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
    /// Reflection in the vertical plane `x1 = -x2`.
    pub const SIGMA1: M3 = [[0.0, -1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
    /// Reflection in the vertical plane `x1 = x2`.
    pub const SIGMA2: M3 = [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
    /// Half turn about the `x2` axis.
    pub const SIGMA3: M3 = [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
    /// Half turn about the `x1` axis.
    pub const SIGMA4: M3 = ROT_X1;
}

//! Immersions, meshes and everything built on top of them: the period gap
//! check, replication, geometry checks, Costa's surface and the deformation
//! family.

pub mod costa;
pub mod export;
pub mod family;
pub mod gap;
pub mod geometry;
pub(crate) mod lattice;
pub mod ode;
pub mod replicate;
pub mod scherk;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use costa::{costa, costa_mu0, CostaConfig, CostaSurface};
pub use family::{deformation_family, gauss_region_check, FamilyMember, GaussRegionReport};
pub use gap::{period_gap, PeriodGap};
pub use replicate::{replicate, replicate_translations};
pub use scherk::{DomainPoint, immerse, GridConfig, Immersion, ImmersionDiagnostics, ScForms, TorusChart};

/// Role of a mesh vertex on the boundary of the fundamental piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryTag {
    Interior,
    /// On the horizontal line through the origin parallel to `x1`.
    LineL1,
    /// On the second horizontal line, across the middle end from `LineL1`.
    LineL1Prime,
    /// On the vertical segment joining the two lines.
    SegmentL2,
    /// Next to the cut between the two side ends; glued by the period translation.
    EndCut,
    /// On the rim of an excised end neighbourhood.
    EndHole,
}

/// Triangle mesh of a minimal surface piece.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    /// Unit normal from the Gauss map, stereographically lifted.
    pub gauss: Vec<[f64; 3]>,
    pub boundary_tag: Vec<BoundaryTag>,
    /// Translation period of the surface.
    pub period: [f64; 3],
    /// Parameter of each vertex in its chart.
    pub param: Vec<Complex64>,
    /// Conformal factor `|dX/du|` at each vertex.
    pub metric_factor: Vec<f64>,
}

/// Stereographic lift of a Gauss map value; `None` stands for `g = inf`.
pub fn normal_from_gauss(g: Option<Complex64>) -> [f64; 3] {
    match g {
        Some(g) if g.norm().is_finite() => {
            let m = g.norm_sqr();
            [2.0 * g.re / (m + 1.0), 2.0 * g.im / (m + 1.0), (m - 1.0) / (m + 1.0)]
        }
        _ => [0.0, 0.0, 1.0],
    }
}

impl SurfaceMesh {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Bounding box diagonal.
    pub fn scale(&self) -> f64 {
        if self.vertices.is_empty() {
            return 0.0;
        }
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2) + (hi[2] - lo[2]).powi(2)).sqrt()
    }

    /// Applies `x -> m x + t` to positions and `n -> m n` to normals.
    pub fn transform(&mut self, m: [[f64; 3]; 3], t: [f64; 3]) {
        let ap = |m: &[[f64; 3]; 3], v: [f64; 3]| {
            [
                m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
                m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
                m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
            ]
        };
        for v in &mut self.vertices {
            let w = ap(&m, *v);
            *v = [w[0] + t[0], w[1] + t[1], w[2] + t[2]];
        }
        for n in &mut self.gauss {
            *n = ap(&m, *n);
        }
        // Orientation reversing maps flip triangles to keep normals consistent.
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det < 0.0 {
            for t in &mut self.triangles {
                t.swap(1, 2);
            }
        }
    }

    pub fn translate(&mut self, t: [f64; 3]) {
        for v in &mut self.vertices {
            for k in 0..3 {
                v[k] += t[k];
            }
        }
    }

    /// Appends another mesh, returning the index offset of its vertices.
    pub fn append(&mut self, other: &SurfaceMesh) -> usize {
        let off = self.vertices.len();
        self.vertices.extend_from_slice(&other.vertices);
        self.gauss.extend_from_slice(&other.gauss);
        self.boundary_tag.extend_from_slice(&other.boundary_tag);
        self.param.extend_from_slice(&other.param);
        self.metric_factor.extend_from_slice(&other.metric_factor);
        self.triangles
            .extend(other.triangles.iter().map(|t| [t[0] + off, t[1] + off, t[2] + off]));
        off
    }

    /// Vertices lying on a boundary edge, i.e. an edge used by one triangle only.
    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut count = std::collections::HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                *count.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
            }
        }
        let mut out = vec![false; self.vertices.len()];
        for ((a, b), c) in count {
            if c == 1 {
                out[a] = true;
                out[b] = true;
            }
        }
        out
    }

    /// Drops vertices no triangle refers to.
    pub fn compact(&mut self) {
        let mut used = vec![false; self.vertices.len()];
        for t in &self.triangles {
            for &i in t {
                used[i] = true;
            }
        }
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut n = 0;
        for i in 0..used.len() {
            if used[i] {
                map[i] = n;
                self.vertices[n] = self.vertices[i];
                self.gauss[n] = self.gauss[i];
                self.boundary_tag[n] = self.boundary_tag[i];
                self.param[n] = self.param[i];
                self.metric_factor[n] = self.metric_factor[i];
                n += 1;
            }
        }
        self.vertices.truncate(n);
        self.gauss.truncate(n);
        self.boundary_tag.truncate(n);
        self.param.truncate(n);
        self.metric_factor.truncate(n);
        for t in &mut self.triangles {
            for i in t.iter_mut() {
                *i = map[*i];
            }
        }
    }
}

//! Building larger pieces of the periodic surface from the fundamental piece.

use super::geometry::{maps, PointHash};
use super::{BoundaryTag, SurfaceMesh};
use crate::{Error, Result};

/// Weld tolerance relative to the mesh scale.
pub const WELD_TOL: f64 = 1e-9;
/// Unwelded glue vertices closer than this (relative to scale) to another copy
/// signal periods that do not close.
pub const MISMATCH_TOL: f64 = 1e-2;

/// `Union_{|k| <= copies} T_{k p} (M u R1 M)`, where `R1` is the half turn about
/// the `x1` axis and `p` the mesh period. Coincident boundary vertices are
/// welded. `copies = 0` returns the input unchanged.
///
/// Fails with [`Error::WeldMismatch`] when a glue vertex of an inner copy has
/// no partner within the weld tolerance but another copy passes nearby, which
/// happens when the periods do not close.
pub fn replicate(mesh: &SurfaceMesh, copies: usize) -> Result<SurfaceMesh> {
    if copies == 0 {
        return Ok(mesh.clone());
    }
    let mut rotated = mesh.clone();
    rotated.transform(maps::ROT_X1, [0.0; 3]);
    assemble(&[mesh, &rotated], mesh.period, copies, |t| {
        matches!(t, BoundaryTag::LineL1 | BoundaryTag::LineL1Prime | BoundaryTag::SegmentL2 | BoundaryTag::EndCut)
    })
}

/// `Union_{|k| <= copies} T_{k p} M`, glued only along the cut between the side
/// ends. Works whether or not the other periods close.
pub fn replicate_translations(mesh: &SurfaceMesh, copies: usize) -> Result<SurfaceMesh> {
    if copies == 0 {
        return Ok(mesh.clone());
    }
    assemble(&[mesh], mesh.period, copies, |t| t == BoundaryTag::EndCut)
}

fn assemble<G: Fn(BoundaryTag) -> bool>(
    pieces: &[&SurfaceMesh],
    period: [f64; 3],
    copies: usize,
    glue: G,
) -> Result<SurfaceMesh> {
    let n = copies as i64;
    let mut all = SurfaceMesh { period, ..Default::default() };
    let mut origin = Vec::new();
    for k in -n..=n {
        for (pi, piece) in pieces.iter().enumerate() {
            let mut m = (*piece).clone();
            let kf = k as f64;
            m.translate([kf * period[0], kf * period[1], kf * period[2]]);
            all.append(&m);
            origin.extend(std::iter::repeat_n((k, pi), m.len()));
        }
    }
    let scale = all.scale().max(1e-300);
    let tol = WELD_TOL * scale;
    let ids: Vec<usize> = (0..all.len()).filter(|&i| glue(all.boundary_tag[i])).collect();
    let pts: Vec<[f64; 3]> = ids.iter().map(|&i| all.vertices[i]).collect();

    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let fine = PointHash::new(&pts, tol);
    let mut welded = vec![false; all.len()];
    for (a, &ia) in ids.iter().enumerate() {
        let near = fine.nearest_filtered(&pts[a], |b| origin[ids[b]] != origin[ia]);
        if let Some((b, d)) = near {
            if d <= tol {
                let ib = ids[b];
                welded[ia] = true;
                welded[ib] = true;
                let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let coarse_tol = MISMATCH_TOL * scale;
    let coarse = PointHash::new(&pts, coarse_tol);
    for (a, &ia) in ids.iter().enumerate() {
        if welded[ia] || origin[ia].0.abs() >= n {
            continue;
        }
        if let Some((_, d)) = coarse.nearest_filtered(&pts[a], |b| origin[ids[b]] != origin[ia]) {
            if d <= coarse_tol {
                return Err(Error::WeldMismatch(format!(
                    "glue vertex at {:?} misses its partner by {d:e} (scale {scale:e})",
                    all.vertices[ia]
                )));
            }
        }
    }

    let mut out = SurfaceMesh { period, ..Default::default() };
    let mut slot = vec![usize::MAX; all.len()];
    let mut map = vec![0usize; all.len()];
    for i in 0..all.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = out.vertices.len();
            out.vertices.push(all.vertices[r]);
            out.gauss.push(all.gauss[r]);
            out.boundary_tag.push(all.boundary_tag[r]);
            out.param.push(all.param[r]);
            out.metric_factor.push(all.metric_factor[r]);
        }
        map[i] = slot[r];
    }
    for t in &all.triangles {
        let m = [map[t[0]], map[t[1]], map[t[2]]];
        if m[0] != m[1] && m[1] != m[2] && m[0] != m[2] {
            out.triangles.push(m);
        }
    }
    // Welded vertices are no longer on the boundary.
    let boundary = out.boundary_vertices();
    for (i, t) in out.boundary_tag.iter_mut().enumerate() {
        if !boundary[i] {
            *t = BoundaryTag::Interior;
        }
    }
    Ok(out)
}

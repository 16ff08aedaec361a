//! Solve, mesh the fundamental piece, glue in its rotated copy and one period
//! on each side, and write OBJ plus a sidecar.
//!
//!     cargo run --release --example mesh -- /tmp/scherk_costa.obj

use scherk_costa::solver::{solve_periods, SolverConfig};
use scherk_costa::surface_mesh::export::save_mesh;
use scherk_costa::surface_mesh::{immerse, replicate, GridConfig};

fn main() -> scherk_costa::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "scherk_costa.obj".into());
    let s = solve_periods(-0.005, &SolverConfig::default())?;
    let imm = immerse(&s.params, &s.end, s.c_star, &GridConfig::default())?;
    let d = &imm.diagnostics;
    println!("fundamental piece: {} vertices, {} triangles", imm.mesh.len(), imm.mesh.triangles.len());
    println!("period (x2)        {:.10}", imm.mesh.period[1]);
    println!("corner offset      {:?}", d.corner_offset);
    println!("cycle residual     {:.2e}", d.cycle_residual);
    let big = replicate(&imm.mesh, 1)?;
    println!("replicated: {} vertices", big.len());
    let side = save_mesh(&big, out.as_ref(), &serde_json::json!({ "rho": s.rho, "c": s.c_star, "diagnostics": d }))?;
    println!("wrote {out} and {}", side.display());
    Ok(())
}

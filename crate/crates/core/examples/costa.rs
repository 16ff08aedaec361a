//! Costa's surface at the closing factor mu0, and an open piece for mu != mu0.

use scherk_costa::surface_mesh::export::save_mesh;
use scherk_costa::surface_mesh::{costa, CostaConfig};

fn main() -> scherk_costa::Result<()> {
    let cfg = CostaConfig::default();
    let closed = costa(None, &cfg)?;
    println!("mu0 = {:.15}  relative gap {:.1e}", closed.mu0, closed.period_gap);
    println!("closed: {} vertices, cycle residual {:.1e}", closed.mesh.len(), closed.cycle_residual);
    save_mesh(&closed.mesh, "costa.ply".as_ref(), &serde_json::json!({ "mu": closed.mu }))?;
    for mu in [0.8, 1.5] {
        let open = costa(Some(mu), &cfg)?;
        println!("mu {mu}: {:?}, below mu0: {}, relative gap {:.3}", open.kind, open.below_mu0, open.period_gap);
    }
    Ok(())
}

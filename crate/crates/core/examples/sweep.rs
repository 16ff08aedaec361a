//! Tabulate the balance values over a lambda x r grid and write CSV to stdout.

use scherk_costa::quadrature::QuadratureConfig;
use scherk_costa::solver::{linspace, sweep};

fn main() -> scherk_costa::Result<()> {
    let rho = -0.005;
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let table = sweep(rho, &[1.0, 1.5, 2.0], &linspace(0.02, 0.18, 9), &QuadratureConfig::default(), threads);
    table.write_csv(std::io::stdout().lock())?;
    let flagged = table.rows.iter().filter(|r| !r.flags.is_empty()).count();
    eprintln!("{} rows, {flagged} flagged", table.rows.len());
    Ok(())
}

//! Run a verification suite and print its table. Pass lemma83, bounds,
//! asymptotics or all.

use scherk_costa::verify::{run_suite, Suite};

fn main() -> scherk_costa::Result<()> {
    let suite: Suite = std::env::args().nth(1).unwrap_or_else(|| "lemma83".into()).parse()?;
    let rep = run_suite(suite);
    print!("{}", rep.to_table());
    for f in rep.failures() {
        eprintln!("failed: {}", f.name);
    }
    Ok(())
}

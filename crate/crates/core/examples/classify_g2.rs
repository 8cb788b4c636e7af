//! Full `G2` classification: Kähler–Einstein orbit, ansatz, general case
//! and oracle, printed as a table and as JSON.

use flag_einstein::polyalg::Budget;
use flag_einstein::rootsys::RootSystem;
use flag_einstein::solver::general::general_default_budget;
use flag_einstein::solver::pipeline::classification;
use flag_einstein::solver::report::{to_json, to_table};
use flag_einstein::solver::OracleConfig;

fn main() -> flag_einstein::Result<()> {
    let g2 = RootSystem::from_label("G2")?;
    let cfg = OracleConfig { starts: 20_000, ..OracleConfig::default() };
    let set = classification(&g2, &Budget::default(), &general_default_budget(), &cfg)?;
    print!("{}", to_table(&set));
    println!("{}", to_json(&set));
    Ok(())
}

//! Multi-start Newton search on `G2` in the gauge `x1 = 1`. Pass the number
//! of starts as the first argument.

use flag_einstein::isotropy::triple_tensor;
use flag_einstein::rootsys::RootSystem;
use flag_einstein::solver::{build_system, newton_oracle, Normalization, OracleConfig};

fn main() -> flag_einstein::Result<()> {
    let starts = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let g2 = RootSystem::from_label("G2")?;
    let tensor = triple_tensor(&g2);
    let system = build_system(&tensor, &Normalization::gauge())?;
    let cfg = OracleConfig { starts, ..OracleConfig::default() };
    let res = newton_oracle(&system, &tensor, &g2.weyl_orbit_permutations()?, &cfg)?;
    println!("{} starts, {} converged, {} accepted", res.starts, res.converged, res.accepted);
    for c in &res.classes {
        let x: Vec<String> = c.x.iter().map(|v| format!("{v:.6}")).collect();
        println!("  {:>6} hits  k = {:.6}  x = ({})", c.hits, c.k, x.join(", "));
    }
    Ok(())
}

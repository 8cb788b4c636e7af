//! Kähler–Einstein metrics `x_α = (2δ, α)` for every supported group of
//! rank at most 4.

use flag_einstein::curvature::{einstein_residual, kaehler_einstein_metric};
use flag_einstein::isotropy::triple_tensor;
use flag_einstein::rational;
use flag_einstein::rootsys::RootSystem;

fn main() -> flag_einstein::Result<()> {
    for label in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "F4"] {
        let sys = RootSystem::from_label(label)?;
        let ke = kaehler_einstein_metric(&sys);
        let (k, spread) = einstein_residual(&ke, &triple_tensor(&sys))?;
        let x: Vec<String> = ke.x.iter().map(rational::to_string).collect();
        let shown = if x.len() > 12 { format!("{} entries", x.len()) } else { x.join(", ") };
        println!("{label:<3} k = {:<8} spread {}  x = ({shown})", rational::to_string(&k), rational::to_string(&spread));
    }
    Ok(())
}

//! The nonzero triples `[k; ij]` for G2 and A2.

use flag_einstein::isotropy::triple_tensor;
use flag_einstein::rootsys::RootSystem;

fn main() -> flag_einstein::Result<()> {
    for label in ["A2", "G2"] {
        let sys = RootSystem::from_label(label)?;
        println!("{label}:");
        for r in triple_tensor(&sys).records() {
            let [i, j, k] = r.indices;
            println!("  [{k};{i}{j}] = {}", r.value);
        }
    }
    Ok(())
}

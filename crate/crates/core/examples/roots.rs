//! Positive roots of G2 with their squared lengths under the Killing form.

use flag_einstein::rational;
use flag_einstein::rootsys::RootSystem;

fn main() -> flag_einstein::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "G2".into());
    let sys = RootSystem::from_label(&label)?;
    println!("{} (rank {}), Cartan matrix {:?}", sys.label(), sys.rank(), sys.cartan());
    for (i, r) in sys.positive_roots().iter().enumerate() {
        let kind = if sys.is_long(i) { "long" } else { "short" };
        println!("x{}  {:<20} {:>6}  {kind}", i + 1, r.to_string(), rational::to_string(&sys.norm2(r)));
    }
    Ok(())
}

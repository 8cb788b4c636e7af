//! The `G2` case `(x1 - x5)(x1 - x6)(x5 - x6) != 0` by multi-modular
//! elimination. The first argument is the per-prime pair budget; the
//! default is small, so the run reports where it stopped.

use flag_einstein::polyalg::Budget;
use flag_einstein::rational;
use flag_einstein::rootsys::RootSystem;
use flag_einstein::solver::general::solve_general_case;

fn main() -> flag_einstein::Result<()> {
    let pairs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let budget = Budget { max_pairs: pairs, ..Budget::default() };
    let g2 = RootSystem::from_label("G2")?;
    let out = solve_general_case(&g2, &budget)?;
    println!("{}: {}", out.case.name, out.case.status.as_str());
    if let Some(why) = &out.budget_status {
        println!("  stopped: {why}");
    }
    if let Some(shape) = &out.shape {
        println!("  eliminant degree {}, {} primes, {} bits", shape.dim, shape.primes, shape.modulus_bits);
        let roots: Vec<String> = out.rational_roots.iter().map(rational::to_string).collect();
        println!("  rational roots in x6: {}", roots.join(", "));
        if let Some(f) = &out.irrational_factor {
            println!("  remaining factor of degree {}", f.degree());
        }
        println!("  {} positive roots rejected, {} solutions", out.rejected.len(), out.solutions.len());
    }
    Ok(())
}

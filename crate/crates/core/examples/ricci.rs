//! Exact Ricci components: the normal metric and the Kähler–Einstein metric
//! of G2, and the symbolic components as Laurent polynomials.

use flag_einstein::curvature::{einstein_residual, ricci, symbolic_ricci, InvariantMetric};
use flag_einstein::isotropy::triple_tensor;
use flag_einstein::rational;
use flag_einstein::rootsys::RootSystem;

fn main() -> flag_einstein::Result<()> {
    let g2 = RootSystem::from_label("G2")?;
    let tensor = triple_tensor(&g2);
    for x in [[1, 1, 1, 1, 1, 1], [3, 1, 4, 5, 6, 9]] {
        let metric = InvariantMetric::from_integers(&x)?;
        let r = ricci(&metric.x, &tensor)?;
        let (k, spread) = einstein_residual(&metric, &tensor)?;
        let r: Vec<String> = r.r.iter().map(rational::to_string).collect();
        println!("x = {x:?}\n  r = ({})\n  mean {}  spread {}", r.join(", "), rational::to_string(&k), rational::to_string(&spread));
    }
    for (i, r) in symbolic_ricci(&tensor)?.iter().enumerate() {
        println!("r{} = {r}", i + 1);
    }
    Ok(())
}

//! The `G2` ansatz `x1 = x5 = 1`, `x4 = x3`: both branches, the degree-14
//! eliminant and the two certified non-Kähler solutions.

use flag_einstein::polyalg::Budget;
use flag_einstein::rootsys::RootSystem;
use flag_einstein::solver::solve_symmetric_ansatz;

fn main() -> flag_einstein::Result<()> {
    let g2 = RootSystem::from_label("G2")?;
    let out = solve_symmetric_ansatz(&g2, &Budget::default())?;
    println!("x6 = 1 branch: {} ({} real roots)", out.degenerate_eliminant, out.degenerate_real_roots);
    println!("x6 != 1 branch eliminant:\n  {}", out.eliminant);
    println!("{} real roots, {} positive solutions", out.real_roots, out.points.len());
    for s in &out.solutions {
        let x: Vec<String> = s.x_f64().iter().map(|v| format!("{v:.6}")).collect();
        println!("  x = ({})  k = {:.6}  spread {:.1e}", x.join(", "), s.k.to_f64(), s.residual);
    }
    println!("x3 = x4 forced by x1 = x5 = 1: {}", out.x3_equals_x4);
    Ok(())
}

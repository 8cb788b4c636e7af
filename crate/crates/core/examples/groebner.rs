//! Lex Groebner basis of a small system, its eliminant and certified real
//! roots.

use flag_einstein::polyalg::text::parse_system;
use flag_einstein::polyalg::{buchberger, isolate_real_roots, Budget, TermOrder, UniPoly};
use flag_einstein::rational;

fn main() -> flag_einstein::Result<()> {
    let polys = parse_system("x^2 + y^2 + z^2 - 4\nx*y - z\nx - y + z - 1", None)?;
    let gb = buchberger(&polys, &TermOrder::lex(3), &Budget::default())?;
    for g in &gb.generators {
        println!("{g}");
    }
    let z = gb.univariate_in(2)[0];
    let width = rational::q(1, 1_000_000_000_000);
    for root in isolate_real_roots(&UniPoly::from_multi(z)?, None)? {
        let r = root.refined(&width);
        println!("z in [{}, {}] ~ {:.10}", rational::to_string(&r.lo), rational::to_string(&r.hi), r.to_f64());
    }
    Ok(())
}

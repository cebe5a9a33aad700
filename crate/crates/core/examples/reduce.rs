//! Reduce a second-order system to a single first-order equation.

use aode::parse::parse_system;
use aode::reduction::reduce_system;

fn main() -> aode::Result<()> {
    let src = "y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0";
    let s = parse_system(src)?.system;
    let r = reduce_system(&s)?;
    println!("H = {}", r.h.display_y());
    for c in &r.per_chain {
        let polys: Vec<String> = c.chain.polys.iter().map(|p| p.display_y()).collect();
        println!("  [{}] contributes {}", polys.join(", "), c.h.display_y());
    }
    Ok(())
}

//! Generic family, exceptional branches and poles at x = 0.

use aode::arith::field::qi;
use aode::parse::parse_system;
use aode::puiseux::puiseux_solve_system;

fn main() -> aode::Result<()> {
    let s = parse_system("y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0")?.system;
    let sol = puiseux_solve_system(&s, Some(qi(3)), false)?;
    for f in &sol.local.families {
        println!("{}   ({})", f.display(), f.display_constraints().join(", "));
    }
    for (y0, branches) in &sol.local.critical {
        for t in branches {
            println!("y(0) = {y0}: {}", t.display());
        }
    }
    println!("poles: {}", sol.local.poles.len());
    println!("all verified: {}", sol.all_verified());
    Ok(())
}

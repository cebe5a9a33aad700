//! Solutions through a prescribed point (x0, y0).

use aode::arith::field::{q, qi};
use aode::parse::parse_system;
use aode::puiseux::solve_system_at_point;

fn main() -> aode::Result<()> {
    let s = parse_system("y*y' - 1 = 0")?.system;
    for (x0, y0) in [(q(1, 2), qi(3)), (qi(2), qi(0))] {
        let (_, found) = solve_system_at_point(&s, &x0, &y0, Some(qi(4)))?;
        for (t, check) in found {
            println!("y({x0}) = {y0}: {}  [verified: {}]", t.display(), check.ok);
        }
    }
    Ok(())
}

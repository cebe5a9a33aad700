use aode::arith::field::qi;
use aode::parse::parse_system;
use aode::puiseux::puiseux_solve_system;

fn main() -> aode::Result<()> {
    let s = parse_system("y*y' - 1 = 0")?.system;
    let sol = puiseux_solve_system(&s, Some(qi(3)), true)?;
    for t in &sol.infinity {
        println!("{}  unique: {}", t.display(), t.unique_extension);
    }
    Ok(())
}

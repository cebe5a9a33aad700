use aode::algebraic::rational_solutions;
use aode::parse::parse_system;

fn main() -> aode::Result<()> {
    let s = parse_system("y' + y^2 = 0; y'' - 2*y^3 = 0")?.system;
    for r in rational_solutions(&s)? {
        println!("{}  (degree {}, verified {})", r.display(), r.degree, r.verified);
    }
    Ok(())
}

use aode::algebraic::alg_solution_system;
use aode::parse::parse_system;

fn main() -> aode::Result<()> {
    for src in ["y*y' - 1 = 0", "y'^2 - 4*y = 0", "y' - y = 0"] {
        let s = parse_system(src)?.system;
        let fams = alg_solution_system(&s)?;
        if fams.is_empty() {
            println!("{src}: no algebraic solutions");
        }
        for f in fams {
            println!("{src}: {} = 0, degrees ({}, {})", f.display_family(), f.degree_x, f.degree_y);
        }
    }
    Ok(())
}

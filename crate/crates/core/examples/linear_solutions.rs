use aode::parse::parse_system;
use aode::puiseux::linear_solutions;

fn main() -> aode::Result<()> {
    for src in ["y'^2 - 4 = 0", "y'^3 - 2*y' = 0; y'' = 0"] {
        let s = parse_system(src)?.system;
        let shown: Vec<String> = linear_solutions(&s).iter().map(|l| l.display()).collect();
        println!("{src}: {}", shown.join("; "));
    }
    Ok(())
}

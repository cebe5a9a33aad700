use aode::chains::{is_regular_chain, triangularize};
use aode::parse::parse_system;

fn main() -> aode::Result<()> {
    let s = parse_system("y'^2 - y = 0; y'' - 1/2 = 0")?.system;
    for chain in triangularize(&s.equations)? {
        let polys: Vec<String> = chain.polys.iter().map(|p| p.display_y()).collect();
        println!("{}  (regular: {})", polys.join(", "), is_regular_chain(&chain.polys));
    }
    Ok(())
}

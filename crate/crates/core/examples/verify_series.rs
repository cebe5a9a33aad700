//! Check hand-written truncations against a system.

use aode::arith::field::qi;
use aode::parse::{parse_series, parse_system};
use aode::series::ExpansionPoint;
use aode::verify::verify_series;

fn main() -> aode::Result<()> {
    let s = parse_system("y*y' - 1 = 0")?.system;
    for (text, order) in [("1 + x - 1/2*x^2 + 1/2*x^3", Some(qi(3))), ("sqrt(2)*x^(1/2)", None), ("1 + 2*x", Some(qi(1)))] {
        let y = parse_series(text, ExpansionPoint::Zero, order.as_ref())?;
        let v = verify_series(&s, &y);
        println!("{text}: ok = {}", v.ok);
    }
    Ok(())
}

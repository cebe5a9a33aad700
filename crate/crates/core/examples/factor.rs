//! The polynomial kernel on its own: factorization, gcd, resultant.

use aode::poly::{factor_bivariate, poly_gcd, resultant, MultiPoly};

fn main() -> aode::Result<()> {
    // (u0*u1 - 1) * (u1^2 - u0) * (u0 + 2)
    let a = MultiPoly::from_int_terms(&[(1, &[1, 1]), (-1, &[])]);
    let b = MultiPoly::from_int_terms(&[(1, &[0, 2]), (-1, &[1])]);
    let c = MultiPoly::from_int_terms(&[(1, &[1]), (2, &[])]);
    let f = a.mul(&b).mul(&c);
    for (g, m) in factor_bivariate(&f)?.factors {
        println!("factor {} ^ {m}", g.display_y());
    }
    println!("gcd(f, a*c) = {}", poly_gcd(&f, &a.mul(&c)).display_y());
    println!("Res_y'(a, b) = {}", resultant(&a, &b, 1).display_y());
    Ok(())
}

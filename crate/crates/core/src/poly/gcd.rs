//! Greatest common divisors by recursive primitive remainder sequences.

use super::multipoly::MultiPoly;
use crate::arith::field::Field;

/// Normalized gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    if f.is_zero() {
        return g.normalize();
    }
    if g.is_zero() {
        return f.normalize();
    }
    let v = match (f.max_var(), g.max_var()) {
        (None, _) | (_, None) => return MultiPoly::one(),
        (Some(a), Some(b)) => a.max(b),
    };
    if !f.contains_var(v) {
        return poly_gcd(f, &content(g, v));
    }
    if !g.contains_var(v) {
        return poly_gcd(&content(f, v), g);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = poly_gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = a.prem(&b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = MultiPoly::one();
            break;
        }
        a = b;
        b = primitive_part(&r, v);
    }
    c.mul(&primitive_part(&b, v)).normalize()
}

/// Gcd of the coefficients with respect to `u_v`.
pub fn content<F: Field>(f: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let mut g = MultiPoly::zero();
    for c in f.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

pub fn primitive_part<F: Field>(f: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    if f.is_zero() {
        return f.clone();
    }
    f.div_exact(&content(f, v)).expect("content divides").normalize()
}

/// Normalized least common multiple.
pub fn poly_lcm<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero();
    }
    let d = poly_gcd(f, g);
    f.mul(g).div_exact(&d).expect("gcd divides product").normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{qi, Q};

    type P = MultiPoly<Q>;

    fn u(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn shared_factor() {
        let a = u(0).sub(&P::one());
        let f = a.mul(&u(1).add(&P::constant(qi(2))));
        let g = a.mul(&u(1));
        assert_eq!(poly_gcd(&f, &g), a);
        let h = u(0).mul(&u(1)).sub(&P::one());
        assert_eq!(poly_gcd(&h, &h), h);
        assert_eq!(poly_gcd(&h, &P::one()), P::one());
    }

    #[test]
    fn normalized_sign() {
        let h = P::one().sub(&u(0).mul(&u(1)));
        assert_eq!(poly_gcd(&h, &P::zero()), u(0).mul(&u(1)).sub(&P::one()));
    }
}

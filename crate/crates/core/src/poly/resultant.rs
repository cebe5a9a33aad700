//! Resultants by the subresultant algorithm.

use super::multipoly::MultiPoly;
use crate::arith::field::Field;

/// `Res_{u_v}(f, g)`, equal to the Sylvester determinant.
pub fn resultant<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = false;
    if a.degree_in(v) < b.degree_in(v) {
        if a.degree_in(v) % 2 == 1 && b.degree_in(v) % 2 == 1 {
            sign = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree_in(v) == 0 {
        let r = b.pow(a.degree_in(v));
        return if sign { r.neg() } else { r };
    }
    let mut gg = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = a.prem(&b, v);
        if r.is_zero() {
            return MultiPoly::zero();
        }
        a = b;
        b = r
            .div_exact(&gg.mul(&h.pow(delta)))
            .expect("subresultant division is exact");
        gg = a.lc_in(v);
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
        if b.degree_in(v) == 0 {
            break;
        }
    }
    let da = a.degree_in(v);
    let res = if da == 0 {
        b
    } else {
        b.pow(da)
            .div_exact(&h.pow(da - 1))
            .expect("subresultant division is exact")
    };
    if sign {
        res.neg()
    } else {
        res
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Q;

    type P = MultiPoly<Q>;

    fn u(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn small_resultants() {
        let f = u(0).mul(&u(1)).sub(&P::one());
        // det [[u0, -1], [1, -1]]
        assert_eq!(resultant(&f, &u(1).sub(&P::one()), 1), P::one().sub(&u(0)));
        assert!(resultant(&f, &f, 1).is_zero());
        assert_eq!(resultant(&u(0), &f, 1), u(0));
    }
}

//! Square-free parts and removal of univariate factors.

use super::gcd::{content, poly_gcd};
use super::multipoly::MultiPoly;
use crate::arith::field::Field;

/// Product of the distinct irreducible factors of `f`, normalized.
pub fn squarefree_part<F: Field>(f: &MultiPoly<F>) -> MultiPoly<F> {
    assert!(!f.is_zero(), "square-free part of zero");
    let Some(v) = f.max_var() else {
        return MultiPoly::one();
    };
    let c = content(f, v);
    let p = f.div_exact(&c).expect("content divides");
    let g = poly_gcd(&p, &p.derivative(v));
    let core = p.div_exact(&g).expect("gcd divides");
    squarefree_part(&c).mul(&core).normalize()
}

/// Yun's decomposition of a polynomial primitive in `u_v`:
/// `(factor, multiplicity)` pairs with normalized factors of positive degree in `u_v`.
pub fn squarefree_decomposition<F: Field>(f: &MultiPoly<F>, v: usize) -> Vec<(MultiPoly<F>, u32)> {
    let mut out = Vec::new();
    if f.degree_in(v) == 0 {
        return out;
    }
    let d = f.derivative(v);
    let a = poly_gcd(f, &d);
    let mut b = f.div_exact(&a).expect("gcd divides");
    let mut c = d.div_exact(&a).expect("gcd divides");
    let mut i = 1;
    while b.degree_in(v) > 0 {
        let dd = c.sub(&b.derivative(v));
        let g = poly_gcd(&b, &dd);
        if g.degree_in(v) > 0 {
            out.push((g.clone(), i));
        }
        b = b.div_exact(&g).expect("gcd divides");
        c = dd.div_exact(&g).expect("gcd divides");
        i += 1;
    }
    out
}

/// Result of removing the factors of a bivariate polynomial that depend on
/// only one of `u₀`, `u₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stripped<F: Field> {
    pub stripped: MultiPoly<F>,
    pub y_factors: MultiPoly<F>,
    pub yprime_factors: MultiPoly<F>,
}

/// `f = unit · y_factors · yprime_factors · stripped`, where `y_factors` lies
/// in `F[u₀]`, `yprime_factors` in `F[u₁]`, and `stripped` has neither kind.
pub fn strip_univariate_factors<F: Field>(f: &MultiPoly<F>) -> Stripped<F> {
    assert!(!f.is_zero(), "strip of zero polynomial");
    let y_factors = content(f, 1).normalize();
    let rest = f.div_exact(&y_factors).expect("content divides");
    let yprime_factors = content(&rest, 0).normalize();
    let stripped = rest.div_exact(&yprime_factors).expect("content divides").normalize();
    Stripped {
        stripped,
        y_factors,
        yprime_factors,
    }
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
    fn examples() {
        let h = u(0).mul(&u(1)).sub(&P::one());
        assert_eq!(squarefree_part(&h.mul(&h)), h);
        let f = u(0).pow(2).mul(&u(1).add(&P::one()));
        assert_eq!(squarefree_part(&f), u(0).mul(&u(1).add(&P::one())));
        let s = strip_univariate_factors(&u(0).mul(&h));
        assert_eq!((s.stripped, s.y_factors, s.yprime_factors), (h.clone(), u(0), P::one()));
        let g = u(1).sub(&P::one()).mul(&u(0).sub(&P::constant(qi(2))));
        let s = strip_univariate_factors(&g);
        assert_eq!(s.stripped, P::one());
        assert_eq!(s.y_factors, u(0).sub(&P::constant(qi(2))));
        assert_eq!(s.yprime_factors, u(1).sub(&P::one()));
    }

    #[test]
    fn yun_bivariate() {
        let h = u(0).mul(&u(1)).sub(&P::one());
        let f = h.pow(2).mul(&u(1).add(&u(0)));
        let d = squarefree_decomposition(&f, 1);
        assert_eq!(d, vec![(u(1).add(&u(0)), 1), (h, 2)]);
    }
}

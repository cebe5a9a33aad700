//! Rational functions in several variables, kept in lowest terms.

use super::gcd::poly_gcd;
use super::multipoly::MultiPoly;
use crate::arith::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiRatFunc<F: Field> {
    pub num: MultiPoly<F>,
    pub den: MultiPoly<F>,
}

impl<F: Field> MultiRatFunc<F> {
    pub fn new(num: MultiPoly<F>, den: MultiPoly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let g = poly_gcd(&num, &den);
        let n = num.div_exact(&g).expect("gcd divides");
        let d = den.div_exact(&g).expect("gcd divides");
        // Normalize the denominator and carry the scalar to the numerator.
        let dn = d.normalize();
        let s = d.leading_coeff().over(&dn.leading_coeff());
        MultiRatFunc {
            num: n.scale(&s),
            den: dn,
        }
    }

    pub fn from_poly(p: MultiPoly<F>) -> Self {
        MultiRatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        MultiRatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        MultiRatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Evaluates a polynomial at rational-function arguments `u_i ↦ args[i]`,
    /// variables beyond `args` left untouched, over a common denominator.
    pub fn eval_poly(p: &MultiPoly<F>, args: &[Self]) -> Self {
        let mut acc = Self::from_poly(MultiPoly::zero());
        for (m, c) in p.terms() {
            let mut t = Self::from_poly(MultiPoly::constant(c.clone()));
            let mut rest = m.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 && i < args.len() {
                    t = t.mul(&args[i].pow(e));
                    rest = rest.with_exp(i, 0);
                }
            }
            t.num = t.num.mul_mono(&rest);
            acc = acc.add(&t);
        }
        acc
    }
}

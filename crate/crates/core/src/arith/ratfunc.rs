use std::fmt;

use super::field::{Field, Q};
use super::upoly::UPoly;

/// Name used when rendering the parameter of a rational function.
pub const PARAM: &str = "y0";

/// Element of ℚ(y₀): coprime numerator and monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: UPoly<Q>,
    den: UPoly<Q>,
}

impl RatFunc {
    pub fn new(num: UPoly<Q>, den: UPoly<Q>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let n = num.div_exact(&g).unwrap();
        let d = den.div_exact(&g).unwrap();
        let lc = d.lc();
        RatFunc {
            num: n.scale(&lc.inverse()),
            den: d.monic(),
        }
    }

    pub fn param() -> Self {
        Self::from_poly(UPoly::x())
    }

    pub fn from_poly(p: UPoly<Q>) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn num(&self) -> &UPoly<Q> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<Q> {
        &self.den
    }

    /// d/dy₀.
    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, at: &Q) -> Option<Q> {
        let d = self.den.eval(at);
        if Field::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn negated(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }
    fn from_rational(value: &Q) -> Self {
        Self::from_poly(UPoly::constant(value.clone()))
    }
    fn as_rational(&self) -> Option<Q> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.display_with(PARAM);
        if self.den.is_constant() {
            return f.write_str(&n);
        }
        // Pull the numerator's constant factor in front: c/(den) style.
        let d = self.den.display_with(PARAM);
        let d = if self.den.coeffs().iter().filter(|c| !Field::is_zero(*c)).count() > 1 {
            format!("({d})")
        } else {
            d
        };
        if self.num.is_constant() {
            let c = self.num.coeff(0);
            let (sign, c) = if c < Q::from_integer(0.into()) {
                ("-", -c)
            } else {
                ("", c)
            };
            if c.is_integer() {
                write!(f, "{sign}{c}/{d}")
            } else {
                write!(f, "{sign}{}/({}*{d})", c.numer(), c.denom())
            }
        } else if self.num.coeffs().iter().filter(|c| !Field::is_zero(*c)).count() > 1 {
            write!(f, "({n})/{d}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;

    #[test]
    fn arithmetic_and_display() {
        let y = RatFunc::param();
        let inv = y.inverse();
        assert_eq!(inv.to_string(), "1/y0");
        let c = inv.pow(3).times(&RatFunc::from_rational(&crate::arith::field::q(-1, 2)));
        assert_eq!(c.to_string(), "-1/(2*y0^3)");
        assert_eq!(inv.derivative(), inv.pow(2).negated());
        assert_eq!(inv.eval(&qi(2)), Some(crate::arith::field::q(1, 2)));
        assert_eq!(inv.eval(&qi(0)), None);
    }
}

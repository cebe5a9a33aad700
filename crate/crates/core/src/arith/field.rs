use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Builds `n/d` as a reduced rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact field arithmetic used by every polynomial type in the crate.
///
/// Method names avoid the `std::ops` names so that foreign types implementing
/// both do not produce ambiguous method calls.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self;
    fn from_rational(value: &Q) -> Self;

    /// Returns `Some` when the element lies in the prime field ℚ.
    fn as_rational(&self) -> Option<Q>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn over(&self, other: &Self) -> Self {
        self.times(&other.inverse())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&qi(n))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Scalar that brings a coefficient list (leading coefficient first) to
    /// canonical form. The default makes the leading coefficient one.
    fn normalizer(coeffs: &[&Self]) -> Self {
        coeffs
            .first()
            .map(|c| c.inverse())
            .unwrap_or_else(Self::one)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }
    fn from_rational(value: &Q) -> Self {
        value.clone()
    }
    fn as_rational(&self) -> Option<Q> {
        Some(self.clone())
    }

    /// Integer coefficients with unit content and positive leading term.
    fn normalizer(coeffs: &[&Self]) -> Self {
        integer_normalizer(coeffs.iter().copied())
    }
}

/// Multiplier turning rationals into coprime integers whose first entry is positive.
pub fn integer_normalizer<'a>(coeffs: impl Iterator<Item = &'a Q> + Clone) -> Q {
    let mut den = BigInt::one();
    for c in coeffs.clone() {
        den = den.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    let mut lead_sign = None;
    for c in coeffs {
        let n = c.numer() * (&den / c.denom());
        if lead_sign.is_none() && !n.is_zero() {
            lead_sign = Some(n.is_negative());
        }
        g = g.gcd(&n);
    }
    if g.is_zero() {
        return <Q as One>::one();
    }
    let m = Q::new(den, g);
    if lead_sign == Some(true) {
        -m
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizer_clears_denominators_and_sign() {
        let cs = [q(-1, 2), q(3, 4)];
        let m = <Q as Field>::normalizer(&[&cs[0], &cs[1]]);
        assert_eq!(&cs[0] * &m, qi(2));
        assert_eq!(&cs[1] * &m, qi(-3));
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(q(2, 3).pow(5), q(32, 243));
        assert_eq!(q(7, 1).pow(0), qi(1));
    }
}

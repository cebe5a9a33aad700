//! Truncated Puiseux series with exact coefficients and tracked precision.
//!
//! Terms are keyed by `κ = σ·e`, where `e` is the exponent of `x` and
//! `σ = +1` at zero, `σ = -1` at infinity, so that in both cases smaller
//! `κ` means more significant. A series knows its coefficients for every
//! `κ` below its precision; an exact series knows all of them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::field::{qi, Field, Q};
use crate::poly::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionPoint {
    Zero,
    Infinity,
}

impl ExpansionPoint {
    pub fn sigma(self) -> Q {
        match self {
            ExpansionPoint::Zero => qi(1),
            ExpansionPoint::Infinity => qi(-1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<F: Field> {
    point: ExpansionPoint,
    terms: BTreeMap<Q, F>,
    prec: Option<Q>,
}

impl<F: Field> TruncatedSeries<F> {
    /// A finite sum `Σ c·x^e`, known exactly.
    pub fn exact(point: ExpansionPoint, terms: impl IntoIterator<Item = (Q, F)>) -> Self {
        let s = point.sigma();
        let mut out = TruncatedSeries {
            point,
            terms: BTreeMap::new(),
            prec: None,
        };
        for (e, c) in terms {
            out.add_term(&s * e, c);
        }
        out
    }

    /// Terms known for every `κ < kappa_prec`.
    pub fn with_precision(point: ExpansionPoint, terms: impl IntoIterator<Item = (Q, F)>, kappa_prec: Q) -> Self {
        let mut out = Self::exact(point, terms);
        out.prec = Some(kappa_prec);
        out.trim();
        out
    }

    pub fn constant(point: ExpansionPoint, c: F) -> Self {
        Self::exact(point, [(qi(0), c)])
    }

    pub fn point(&self) -> ExpansionPoint {
        self.point
    }

    /// Precision in `κ`, `None` when exact.
    pub fn kappa_precision(&self) -> Option<&Q> {
        self.prec.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    fn add_term(&mut self, k: Q, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = v.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn trim(&mut self) {
        if let Some(p) = &self.prec {
            let p = p.clone();
            self.terms.retain(|k, _| *k < p);
        }
    }

    /// Known terms as `(exponent, coefficient)` in order of significance.
    pub fn terms(&self) -> Vec<(Q, F)> {
        let s = self.point.sigma();
        self.terms.iter().map(|(k, c)| (&s * k, c.clone())).collect()
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: &Q) -> F {
        let k = self.point.sigma() * e;
        self.terms.get(&k).cloned().unwrap_or_else(F::zero)
    }

    /// Smallest `κ` with a non-zero known coefficient.
    pub fn leading_kappa(&self) -> Option<Q> {
        self.terms.keys().next().cloned()
    }

    /// Lower bound on the order of the true series: the first non-zero
    /// known `κ`, else the precision, else `None` for the exact zero.
    pub fn valuation_bound(&self) -> Option<Q> {
        self.leading_kappa().or_else(|| self.prec.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn min_prec(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
        match (a, b) {
            (None, x) | (x, None) => x.clone(),
            (Some(x), Some(y)) => Some(x.min(y).clone()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out.prec = Self::min_prec(&self.prec, &o.prec);
        out.trim();
        out
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            point: self.point,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.negated())).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return TruncatedSeries {
                point: self.point,
                terms: BTreeMap::new(),
                prec: None,
            };
        }
        TruncatedSeries {
            point: self.point,
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a.times(c))).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let pa = self.prec.as_ref().map(|p| p + o.valuation_bound().unwrap_or_else(|| p.clone()));
        let pb = o.prec.as_ref().map(|p| p + self.valuation_bound().unwrap_or_else(|| p.clone()));
        // An exact zero factor makes the product exactly zero.
        let prec = if (self.is_exact() && self.is_zero()) || (o.is_exact() && o.is_zero()) {
            None
        } else {
            Self::min_prec(&pa, &pb)
        };
        let mut out = TruncatedSeries {
            point: self.point,
            terms: BTreeMap::new(),
            prec,
        };
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let k = k1 + k2;
                if out.prec.as_ref().is_some_and(|p| k >= *p) {
                    continue;
                }
                out.add_term(k, c1.times(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.point, F::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative with respect to `x`.
    pub fn derivative(&self) -> Self {
        let s = self.point.sigma();
        let mut out = TruncatedSeries {
            point: self.point,
            terms: BTreeMap::new(),
            prec: self.prec.as_ref().map(|p| p - &s),
        };
        for (k, c) in &self.terms {
            let e = &s * k;
            if e == qi(0) {
                continue;
            }
            out.add_term(k - &s, c.times(&F::from_rational(&e)));
        }
        out
    }

    /// Multiplication by `x^a`.
    pub fn shift(&self, a: &Q) -> Self {
        let d = self.point.sigma() * a;
        TruncatedSeries {
            point: self.point,
            terms: self.terms.iter().map(|(k, c)| (k + &d, c.clone())).collect(),
            prec: self.prec.as_ref().map(|p| p + &d),
        }
    }

    /// `1/self`, computed to relative precision `rel` (in `κ`) beyond the
    /// leading term, or to the precision the input supports if smaller.
    pub fn reciprocal(&self, rel: &Q) -> Self {
        let k0 = self.leading_kappa().expect("reciprocal of a series with no known leading term");
        let c0 = self.terms[&k0].clone();
        let mut rel = rel.clone();
        if let Some(p) = &self.prec {
            rel = rel.min(p - &k0);
        }
        // u = self / (c0 x^e0) = 1 + t
        let s = self.point.sigma();
        let u = self.shift(&(-(&s * &k0))).scale(&c0.inverse());
        let mut t = u.sub(&Self::constant(self.point, F::one()));
        t.prec = Some(t.prec.map_or(rel.clone(), |p| p.min(rel.clone())));
        t.trim();
        let mut inv = TruncatedSeries {
            point: self.point,
            terms: BTreeMap::new(),
            prec: Some(rel.clone()),
        };
        inv.add_term(qi(0), F::one());
        if let Some(delta) = t.leading_kappa() {
            let mut power = Self::constant(self.point, F::one());
            let mut sign = F::one();
            let mut k = 0;
            loop {
                k += 1;
                power = power.mul(&t);
                sign = sign.negated();
                if delta.clone() * qi(k) >= rel {
                    break;
                }
                inv = inv.add(&power.scale(&sign));
            }
        }
        inv.prec = Some(rel);
        inv.trim();
        inv.shift(&(-(&s * &k0))).scale(&c0.inverse())
    }

    /// Keeps only terms with `κ < kappa_prec` and marks the result inexact.
    pub fn truncate(&self, kappa_prec: &Q) -> Self {
        let mut out = self.clone();
        out.prec = Some(Self::min_prec(&self.prec, &Some(kappa_prec.clone())).unwrap());
        out.trim();
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> TruncatedSeries<G> {
        let mut out = TruncatedSeries {
            point: self.point,
            terms: BTreeMap::new(),
            prec: self.prec.clone(),
        };
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// `F(y, y', …, y^(m))` for a polynomial with rational coefficients.
    pub fn substitute_into(&self, f: &MultiPoly<Q>) -> Self {
        let m = f.max_var().unwrap_or(0);
        let mut derivs = vec![self.clone()];
        for _ in 0..m {
            let d = derivs.last().unwrap().derivative();
            derivs.push(d);
        }
        let mut acc = TruncatedSeries {
            point: self.point,
            terms: BTreeMap::new(),
            prec: None,
        };
        for (mono, c) in f.terms() {
            let mut t = Self::constant(self.point, F::from_rational(c));
            for (i, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&derivs[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q;

    type S = TruncatedSeries<Q>;

    #[test]
    fn reciprocal_of_geometric() {
        // 1/(1 - x) = 1 + x + x^2 + ...
        let s = S::exact(ExpansionPoint::Zero, [(qi(0), qi(1)), (qi(1), qi(-1))]);
        let r = s.reciprocal(&qi(4));
        assert_eq!(r.terms().len(), 4);
        assert!(r.terms().iter().all(|(_, c)| *c == qi(1)));
        assert_eq!(r.kappa_precision(), Some(&qi(4)));
    }

    #[test]
    fn derivative_lowers_precision_at_zero() {
        let s = S::with_precision(ExpansionPoint::Zero, [(qi(0), qi(1)), (q(1, 2), qi(2))], qi(3));
        let d = s.derivative();
        assert_eq!(d.coeff(&q(-1, 2)), qi(1));
        assert_eq!(d.kappa_precision(), Some(&qi(2)));
    }

    #[test]
    fn infinity_orders_descending() {
        let s = S::exact(ExpansionPoint::Infinity, [(qi(1), qi(1)), (qi(0), qi(3))]);
        assert_eq!(s.terms()[0].0, qi(1));
        assert_eq!(s.leading_kappa(), Some(qi(-1)));
    }
}

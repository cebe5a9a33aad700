//! Sparse multivariate polynomials in `u₀, u₁, …` with lexicographic order
//! `u₀ < u₁ < …` (the highest variable is most significant).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::field::{Field, Q};
use crate::arith::upoly::{push_term, UPoly};

/// Exponent vector; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn new(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Mono(e)
    }

    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: usize, e: u32) -> Self {
        let mut x = vec![0; v + 1];
        x[v] = e;
        Self::new(x)
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        Mono::new((0..n).map(|i| self.exp(i) + o.exp(i)).collect())
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if o.0.len() > self.0.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            out.push(self.exp(i).checked_sub(o.exp(i))?);
        }
        Some(Mono::new(out))
    }

    pub fn with_exp(&self, v: usize, e: u32) -> Mono {
        let mut x = self.0.clone();
        if x.len() <= v {
            x.resize(v + 1, 0);
        }
        x[v] = e;
        Mono::new(x)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        let n = self.0.len().max(o.0.len());
        for i in (0..n).rev() {
            match self.exp(i).cmp(&o.exp(i)) {
                Ordering::Equal => continue,
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<F: Field> {
    terms: BTreeMap<Mono, F>,
}

impl<F: Field> Default for MultiPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> MultiPoly<F> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Mono::one())
    }

    pub fn term(c: F, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// The variable `u_v`.
    pub fn var(v: usize) -> Self {
        Self::term(F::one(), Mono::var(v, 1))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<F> {
        if self.is_zero() {
            return Some(F::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn coeff(&self, m: &Mono) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Leading term in the lexicographic order.
    pub fn leading_term(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().next_back()
    }

    /// Leading coefficient in the lexicographic order.
    pub fn leading_coeff(&self) -> F {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    /// Highest variable index occurring, `None` for constants.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.0.len().checked_sub(1)).max()
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Indices of the variables that occur.
    pub fn vars(&self) -> Vec<usize> {
        let n = self.max_var().map_or(0, |v| v + 1);
        (0..n).filter(|&v| self.contains_var(v)).collect()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.times(c))).collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients with respect to `u_v`, indexed by power.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v);
            out[e as usize].add_term(m.with_exp(v, 0), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Inverse of `coeffs_in`.
    pub fn from_coeffs_in(v: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out = out.add(&c.mul_mono(&Mono::var(v, k as u32)));
        }
        out
    }

    /// Leading coefficient with respect to `u_v`.
    pub fn lc_in(&self, v: usize) -> Self {
        self.coeffs_in(v).pop().unwrap_or_else(Self::zero)
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), c.times(&F::from_int(e as i64)));
            }
        }
        out
    }

    /// Replaces `u_v` by `g`.
    pub fn substitute(&self, v: usize, g: &Self) -> Self {
        let cs = self.coeffs_in(v);
        let mut acc = Self::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(g).add(c);
        }
        acc
    }

    /// Simultaneous substitution `u_i ↦ subs[i]` for every `i < subs.len()`.
    pub fn substitute_all(&self, subs: &[Self]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            let mut rest = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if i < subs.len() {
                    t = t.mul(&subs[i].pow(e));
                } else {
                    rest.push((i, e));
                }
            }
            for (i, e) in rest {
                t = t.mul_mono(&Mono::var(i, e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Value of `u_v` fixed to a field element.
    pub fn eval_var(&self, v: usize, x: &F) -> Self {
        self.substitute(v, &Self::constant(x.clone()))
    }

    /// Renames variables: `u_i ↦ u_{perm(i)}`.
    pub fn rename(&self, perm: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut e = Vec::new();
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = perm(i);
                    if e.len() <= j {
                        e.resize(j + 1, 0);
                    }
                    e[j] += k;
                }
            }
            out.add_term(Mono::new(e), c.clone());
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Canonical associate: scaled by the field's normalizer applied to the
    /// coefficients in decreasing term order.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let cs: Vec<&F> = self.terms.values().rev().collect();
        self.scale(&F::normalizer(&cs))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let inv = dc.inverse();
        let mut r = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&dm)?;
            let qc = c.times(&inv);
            r = r.sub(&d.mul_mono(&qm).scale(&qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder `lc_v(g)^(deg_v f - deg_v g + 1) · f mod g` in `u_v`.
    pub fn prem(&self, g: &Self, v: usize) -> Self {
        let dg = g.degree_in(v);
        let df = self.degree_in(v);
        if self.is_zero() || df < dg {
            return self.clone();
        }
        let lg = g.lc_in(v);
        let mut r = self.clone();
        let mut steps = 0;
        while !r.is_zero() && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            r = r.mul(&lg).sub(&g.mul(&lr).mul_mono(&Mono::var(v, dr - dg)));
            steps += 1;
        }
        let total = df - dg + 1;
        r.mul(&lg.pow(total - steps))
    }

    /// Univariate view when only `u_v` occurs.
    pub fn to_upoly(&self, v: usize) -> Option<UPoly<F>> {
        let cs: Option<Vec<F>> = self.coeffs_in(v).iter().map(|c| c.constant_value()).collect();
        cs.map(UPoly::new)
    }

    pub fn from_upoly(p: &UPoly<F>, v: usize) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Mono::var(v, k as u32), c.clone())),
        )
    }

    /// Renders with the given variable names, terms in decreasing order.
    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        name(i)
                    } else {
                        format!("{}^{e}", name(i))
                    }
                })
                .collect();
            push_term(&mut out, c, &mono.join("*"));
        }
        out
    }

    /// Renders `u_i` as `y` with `i` primes, or `y^(i)` from the fourth on.
    pub fn display_y(&self) -> String {
        self.display_with(&y_name)
    }
}

/// Name of the `i`-th derivative of `y` in the input language.
pub fn y_name(i: usize) -> String {
    match i {
        0..=3 => format!("y{}", "'".repeat(i)),
        _ => format!("y^({i})"),
    }
}

pub fn u_name(i: usize) -> String {
    format!("u{i}")
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&u_name))
    }
}

impl MultiPoly<Q> {
    /// Polynomial with small integer coefficients from `(coeff, exponents)` pairs.
    pub fn from_int_terms(ts: &[(i64, &[u32])]) -> Self {
        Self::from_terms(ts.iter().map(|(c, e)| (Mono::new(e.to_vec()), crate::arith::field::qi(*c))))
    }

    /// Total order used to sort outputs deterministically.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        let a: Vec<_> = self.terms.iter().rev().collect();
        let b: Vec<_> = o.terms.iter().rev().collect();
        for ((ma, ca), (mb, cb)) in a.iter().zip(&b) {
            let c = ma.cmp(mb).then_with(|| ca.cmp(cb));
            if c != Ordering::Equal {
                return c;
            }
        }
        a.len().cmp(&b.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;

    type P = MultiPoly<Q>;

    fn u(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn arithmetic_and_display() {
        let f = u(0).mul(&u(1)).sub(&P::one());
        assert_eq!(f.display_y(), "y*y' - 1");
        assert_eq!(f.to_string(), "u0*u1 - 1");
        let g = f.mul(&f);
        assert_eq!(g.div_exact(&f), Some(f.clone()));
        assert_eq!(f.div_exact(&u(0)), None);
    }

    #[test]
    fn lex_order_puts_highest_variable_first() {
        let f = u(1).add(&u(0).pow(5));
        assert_eq!(f.leading_term().unwrap().0, &Mono::var(1, 1));
        assert_eq!(f.max_var(), Some(1));
    }

    #[test]
    fn prem_matches_definition() {
        // prem(u0*u2 + u1^2, u0*u1 - 1, u1) = u0^2 * (u0 u2) + u0^0 ... checked by identity
        let f = u(0).mul(&u(2)).add(&u(1).pow(2));
        let g = u(0).mul(&u(1)).sub(&P::one());
        let r = f.prem(&g, 1);
        assert_eq!(r.degree_in(1), 0);
        // lc^2 f - r is divisible by g
        let diff = u(0).pow(2).mul(&f).sub(&r);
        assert!(diff.div_exact(&g).is_some());
    }

    #[test]
    fn substitution() {
        let f = u(0).mul(&u(1)).sub(&P::one());
        let s = f.substitute(0, &u(0).add(&P::constant(qi(1))));
        assert_eq!(s, u(1).add(&u(0).mul(&u(1))).sub(&P::one()));
    }
}

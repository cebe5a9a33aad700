//! Newton-polygon recursion for first-order equations near a point.
//!
//! A local equation is `Σ coef · t^e · z^i · w^j = 0` where `w` is the
//! derivative of `z`: `w = dz/dt` at zero, or `w = dz/dx = -t² dz/dt` with
//! `t = 1/x` at infinity. For `z ~ c·t^ν` a term has order `a + b·ν` with
//! `a = e + j·d`, `b = i + j`, where `d = -1` at zero and `d = +1` at infinity.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::extension::{AlgebraicNumber, Modulus};
use crate::arith::field::{qi, Field, Q};
use crate::arith::roots::roots_over;
use crate::arith::upoly::UPoly;
use crate::arith::zassenhaus::factor_rational;
use crate::error::Result;
use crate::poly::MultiPoly;
use crate::series::ExpansionPoint;

type K = AlgebraicNumber;

/// Cap on recursion through multiple roots and free coefficients.
pub const MAX_BRANCH_DEPTH: usize = 32;
/// Cap on the total number of polygon steps along one branch.
const MAX_STEPS: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalEq {
    terms: BTreeMap<(Q, u32, u32), K>,
    point: ExpansionPoint,
}

/// The linear function `L(ν) = a + b·ν` governing coefficients after the
/// last computed term.
#[derive(Clone, Debug, PartialEq)]
pub struct Indicial {
    pub a: K,
    pub b: K,
    /// Rational root of `L`, if any.
    pub root: Option<Q>,
    /// True when every non-linear term stays strictly above the linear pivot.
    pub dominated: bool,
}

/// One candidate leading exponent with its characteristic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonStep {
    pub mu: Q,
    pub char_poly: UPoly<K>,
    pub roots: Vec<(K, u32)>,
    /// Indicial function after substituting each simple root, in root order.
    pub indicial: Vec<Option<Indicial>>,
}

/// Result of following one branch.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalBranch {
    /// `(exponent in t, coefficient)`, increasing exponents.
    pub terms: Vec<(Q, K)>,
    /// All further coefficients vanish.
    pub exact: bool,
    pub unique: bool,
    /// Terms are complete for every exponent up to this value.
    pub order: Q,
    pub indicial: Option<Indicial>,
    /// Exponents at which a free coefficient was set to zero.
    pub free: Vec<Q>,
    pub depth_capped: bool,
    /// Smallest exponent at which the next non-zero term may occur; `None`
    /// when exact.
    pub next: Option<Q>,
}

#[derive(Clone, Debug)]
pub struct LocalOptions {
    pub order: Q,
    /// For branches reported as reciprocals: target `order + 2·μ₀`.
    pub pole: bool,
}

fn binom(n: u32, k: u32) -> Q {
    let mut r = qi(1);
    for t in 0..k {
        r = r * qi((n - t) as i64) / qi((t + 1) as i64);
    }
    r
}

impl LocalEq {
    /// `h(z, w)` with `z = u₀`, `w = u₁`.
    pub fn from_poly(h: &MultiPoly<K>, point: ExpansionPoint) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in h.terms() {
            terms.insert((qi(0), m.exp(0), m.exp(1)), c.clone());
        }
        LocalEq { terms, point }
    }

    fn d(&self) -> Q {
        match self.point {
            ExpansionPoint::Zero => qi(-1),
            ExpansionPoint::Infinity => qi(1),
        }
    }

    /// Sign `s` in `D(t^μ) = s·μ·t^(μ+d)`.
    fn s(&self) -> Q {
        -self.d()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn points(&self) -> BTreeMap<(Q, u32), Vec<(u32, K)>> {
        let d = self.d();
        let mut pts: BTreeMap<(Q, u32), Vec<(u32, K)>> = BTreeMap::new();
        for ((e, i, j), c) in &self.terms {
            let a = e + &d * qi(*j as i64);
            pts.entry((a, i + j)).or_default().push((*j, c.clone()));
        }
        pts
    }

    fn context(&self) -> Option<Arc<Modulus<Q>>> {
        self.terms.values().find_map(|c| c.modulus().cloned())
    }

    /// `Σ coef·(sμ)^j` over the terms of one point.
    fn point_value(&self, terms: &[(u32, K)], mu: &Q) -> K {
        let smu = K::from_rational(&(self.s() * mu));
        terms
            .iter()
            .fold(K::zero(), |acc, (j, c)| acc.plus(&c.times(&smu.pow(*j))))
    }

    fn mu_poly(&self, terms: &[(u32, K)]) -> UPoly<K> {
        let s = K::from_rational(&self.s());
        let mut out = UPoly::zero();
        for (j, c) in terms {
            out = out.add(&UPoly::monomial(c.times(&s.pow(*j)), *j as usize));
        }
        out
    }

    /// Admissible leading exponents greater than `last`, increasing.
    pub fn candidates(&self, last: Option<&Q>) -> Vec<Q> {
        let pts = self.points();
        // Only the lowest point of each column can lie on an edge.
        let mut lowest: BTreeMap<u32, &(Q, u32)> = BTreeMap::new();
        for k in pts.keys() {
            lowest.entry(k.1).or_insert(k);
        }
        let keys: Vec<&(Q, u32)> = lowest.into_values().collect();
        let mut cands: Vec<Q> = Vec::new();
        for (x, p) in keys.iter().enumerate() {
            for q in &keys[x + 1..] {
                cands.push((&p.0 - &q.0) / qi(q.1 as i64 - p.1 as i64));
            }
        }
        for k in &keys {
            if k.1 >= 1 {
                cands.extend(rational_roots(&self.mu_poly(&pts[*k])));
            }
        }
        cands.sort();
        cands.dedup();
        cands
            .into_iter()
            .filter(|mu| last.map_or(true, |l| mu > l))
            .filter(|mu| {
                let edge = self.edge(&pts, mu);
                edge.len() >= 2 || self.point_value(edge[0].1, mu).is_zero()
            })
            .collect()
    }

    fn edge<'a>(&self, pts: &'a BTreeMap<(Q, u32), Vec<(u32, K)>>, mu: &Q) -> Vec<(&'a (Q, u32), &'a Vec<(u32, K)>)> {
        let val = |k: &(Q, u32)| &k.0 + mu * qi(k.1 as i64);
        let min = pts.keys().map(val).min().expect("non-empty equation");
        pts.iter().filter(|(k, _)| val(k) == min).collect()
    }

    /// `φ(c) = Σ_edge coef·(sμ)^j·c^(i+j)`.
    pub fn char_poly(&self, mu: &Q) -> UPoly<K> {
        let pts = self.points();
        let mut out = UPoly::zero();
        for ((_, b), terms) in self.edge(&pts, mu) {
            out = out.add(&UPoly::monomial(self.point_value(terms, mu), *b as usize));
        }
        out
    }

    /// Substitutes `z ↦ c·t^μ + z`, `w ↦ s·c·μ·t^(μ+d) + w`.
    pub fn shift(&self, mu: &Q, c: &K) -> LocalEq {
        let d = self.d();
        let cw = c.times(&K::from_rational(&(self.s() * mu)));
        let mut out: BTreeMap<(Q, u32, u32), K> = BTreeMap::new();
        for ((e, i, j), coef) in &self.terms {
            for p in 0..=*i {
                for q in 0..=*j {
                    let (ip, jq) = (i - p, j - q);
                    let exp = e + mu * qi(ip as i64) + (mu + &d) * qi(jq as i64);
                    if jq > 0 && cw.is_zero() {
                        continue;
                    }
                    let k = coef
                        .times(&K::from_rational(&(binom(*i, p) * binom(*j, q))))
                        .times(&c.pow(ip))
                        .times(&cw.pow(jq));
                    if k.is_zero() {
                        continue;
                    }
                    let key = (exp, p, q);
                    let v = out.remove(&key).map_or(k.clone(), |v| v.plus(&k));
                    if !v.is_zero() {
                        out.insert(key, v);
                    }
                }
            }
        }
        LocalEq {
            terms: out,
            point: self.point,
        }
    }

    fn has_constant_part(&self) -> bool {
        self.terms.keys().any(|(_, i, j)| *i == 0 && *j == 0)
    }

    /// Indicial function of the linear part relative to the last exponent.
    pub fn indicial(&self, last: &Q) -> Option<Indicial> {
        let pts = self.points();
        let (al, lin) = pts.iter().find(|((_, b), _)| *b == 1).map(|((a, _), t)| (a.clone(), t))?;
        let dominated = pts
            .keys()
            .filter(|(_, b)| *b >= 2)
            .all(|(a, b)| a + last * qi(*b as i64 - 1) >= al);
        let s = K::from_rational(&self.s());
        let mut a = K::zero();
        let mut b = K::zero();
        for (j, c) in lin {
            if *j == 0 {
                a = a.plus(c);
            } else {
                b = b.plus(&c.times(&s));
            }
        }
        let root = if b.is_zero() {
            None
        } else {
            a.negated().over(&b).as_rational()
        };
        Some(Indicial { a, b, root, dominated })
    }
}

/// Rational roots of a polynomial with algebraic coefficients.
fn rational_roots(p: &UPoly<K>) -> Vec<Q> {
    if p.is_zero() {
        return vec![];
    }
    let width = p.coeffs().iter().map(|c| c.coords().len()).max().unwrap_or(0);
    let mut g = UPoly::<Q>::zero();
    for k in 0..width {
        let coord = UPoly::new(p.coeffs().iter().map(|c| c.coords().get(k).cloned().unwrap_or_else(Q::zero)).collect());
        g = g.gcd(&coord);
    }
    if g.deg() == 0 {
        return vec![];
    }
    factor_rational(&g)
        .1
        .into_iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| -f.coeff(0) / f.coeff(1))
        .collect()
}

/// Newton polygon steps of a local equation with no previous exponent
/// constraint beyond `μ > 0` at zero.
pub fn newton_step(eq: &LocalEq) -> Result<Vec<NewtonStep>> {
    let last = match eq.point {
        ExpansionPoint::Zero => Some(qi(0)),
        ExpansionPoint::Infinity => None,
    };
    let mut out = Vec::new();
    for mu in eq.candidates(last.as_ref()) {
        let phi = eq.char_poly(&mu);
        let mut roots = Vec::new();
        let mut indicial = Vec::new();
        if !phi.is_zero() {
            for r in nonzero_roots(&phi, eq.context().as_ref())? {
                let ind = (r.1 == 1).then(|| eq.shift(&mu, &r.0).indicial(&mu)).flatten();
                indicial.push(ind);
                roots.push(r);
            }
        }
        out.push(NewtonStep {
            mu,
            char_poly: phi,
            roots,
            indicial,
        });
    }
    Ok(out)
}

fn nonzero_roots(phi: &UPoly<K>, ctx: Option<&Arc<Modulus<Q>>>) -> Result<Vec<(K, u32)>> {
    let low = phi.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let reduced = UPoly::new(phi.coeffs()[low..].to_vec());
    if reduced.deg() == 0 {
        return Ok(vec![]);
    }
    Ok(roots_over(&reduced, ctx)?
        .into_iter()
        .map(|r| (r.value, r.multiplicity))
        .collect())
}

/// Follows every branch of `eq` from the empty prefix.
pub fn solve_local(eq: &LocalEq, opts: &LocalOptions) -> Result<Vec<LocalBranch>> {
    let mut out = Vec::new();
    let first = match eq.point {
        ExpansionPoint::Zero => Some(qi(0)),
        ExpansionPoint::Infinity => None,
    };
    let state = State {
        prefix: vec![],
        last: first,
        free: vec![],
        depth: 0,
        steps: 0,
    };
    recurse(eq, state, opts, &mut out)?;
    Ok(out)
}

#[derive(Clone)]
struct State {
    prefix: Vec<(Q, K)>,
    last: Option<Q>,
    free: Vec<Q>,
    depth: usize,
    steps: usize,
}

fn recurse(eq: &LocalEq, st: State, opts: &LocalOptions, out: &mut Vec<LocalBranch>) -> Result<()> {
    let target = match (opts.pole, st.prefix.first()) {
        (true, Some((mu0, _))) => &opts.order + mu0 * qi(2),
        _ => opts.order.clone(),
    };
    let cands = eq.candidates(st.last.as_ref());
    let ind = if st.prefix.is_empty() {
        None
    } else {
        st.last.as_ref().and_then(|l| eq.indicial(l))
    };
    let pending_root = ind
        .as_ref()
        .and_then(|i| i.root.clone())
        .filter(|r| st.last.as_ref().map_or(true, |l| r > l));
    let effective = match &pending_root {
        Some(r) if *r > target => r.clone(),
        _ => target,
    };
    let emit = |exact: bool, unique: bool, capped: bool, free: Vec<Q>, next: Option<Q>, out: &mut Vec<LocalBranch>| {
        if st.prefix.is_empty() {
            return;
        }
        out.push(LocalBranch {
            terms: st.prefix.clone(),
            exact,
            unique,
            order: effective.clone(),
            indicial: ind.clone(),
            free,
            depth_capped: capped,
            next,
        });
    };
    if st.depth > MAX_BRANCH_DEPTH || st.steps > MAX_STEPS {
        emit(false, false, true, st.free.clone(), Some(effective.clone()), out);
        return Ok(());
    }
    let (within, beyond): (Vec<Q>, Vec<Q>) = cands.into_iter().partition(|m| *m <= effective);
    let exact = !eq.has_constant_part();
    if exact {
        // z = 0 solves the remaining equation; a zero free coefficient
        // gives the same solution, so those steps are only recorded.
        let mut free = st.free.clone();
        free.extend(within.iter().chain(&beyond).filter(|m| eq.char_poly(m).is_zero()).cloned());
        let unique = within.is_empty() && beyond.is_empty() && st.free.is_empty();
        emit(true, unique, false, free, None, out);
    } else if !beyond.is_empty() {
        let certified = ind.as_ref().is_some_and(|i| i.dominated) && pending_root.is_none();
        let unique = within.is_empty() && certified && st.free.is_empty();
        emit(false, unique, false, st.free.clone(), beyond.first().cloned(), out);
    }
    for mu in within {
        let phi = eq.char_poly(&mu);
        if phi.is_zero() {
            if exact {
                continue;
            }
            let mut next = st.clone();
            next.last = Some(mu.clone());
            next.free.push(mu);
            next.depth += 1;
            next.steps += 1;
            recurse(eq, next, opts, out)?;
            continue;
        }
        for (c, mult) in nonzero_roots(&phi, eq.context().as_ref())? {
            let shifted = eq.shift(&mu, &c);
            let mut next = st.clone();
            next.prefix.push((mu.clone(), c));
            next.last = Some(mu.clone());
            next.steps += 1;
            if mult > 1 {
                next.depth += 1;
            }
            recurse(&shifted, next, opts, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q;

    fn hyperbola() -> MultiPoly<K> {
        MultiPoly::var(0).mul(&MultiPoly::var(1)).sub(&MultiPoly::one())
    }

    #[test]
    fn hyperbola_at_zero() {
        let eq = LocalEq::from_poly(&hyperbola(), ExpansionPoint::Zero);
        let steps = newton_step(&eq).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].mu, q(1, 2));
        assert_eq!(steps[0].char_poly.display_with("c"), "1/2*c^2 - 1");
        let roots: Vec<String> = steps[0].roots.iter().map(|r| r.0.to_string()).collect();
        assert_eq!(roots, vec!["-sqrt(2)", "sqrt(2)"]);
        let ind = steps[0].indicial[1].clone().unwrap();
        assert_eq!(ind.root, Some(q(-1, 2)));

        let branches = solve_local(&eq, &LocalOptions { order: qi(3), pole: false }).unwrap();
        assert_eq!(branches.len(), 2);
        for b in &branches {
            assert!(b.exact && b.unique);
            assert_eq!(b.terms.len(), 1);
        }
    }

    #[test]
    fn linear_flow() {
        let h = MultiPoly::var(1).sub(&MultiPoly::one());
        let eq = LocalEq::from_poly(&h, ExpansionPoint::Zero);
        let steps = newton_step(&eq).unwrap();
        assert_eq!(steps[0].mu, qi(1));
        assert_eq!(steps[0].roots[0].0, K::one());
    }

    #[test]
    fn shifted_hyperbola_series() {
        // H(1 + z, w) = w + z w - 1
        let h = hyperbola().substitute(0, &MultiPoly::var(0).add(&MultiPoly::one()));
        let eq = LocalEq::from_poly(&h, ExpansionPoint::Zero);
        let b = solve_local(&eq, &LocalOptions { order: qi(3), pole: false }).unwrap();
        assert_eq!(b.len(), 1);
        let coeffs: Vec<String> = b[0].terms.iter().map(|(_, c)| c.to_string()).collect();
        assert_eq!(coeffs, vec!["1", "-1/2", "1/2"]);
        assert!(b[0].unique && !b[0].exact);
    }
}

//! Triangular systems, regular chains and a characteristic-set decomposition.

use std::cmp::Ordering;

use crate::arith::field::Q;
use crate::error::{AodeError, Result};
use crate::poly::{factor_bivariate, poly_gcd, resultant, squarefree_part, MultiPoly};

type P = MultiPoly<Q>;

/// Leading variable, leading coefficient and initial of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingData {
    pub lv: usize,
    pub lc: P,
    pub init: P,
}

pub fn leading_data(f: &P) -> Result<LeadingData> {
    let lv = f.max_var().ok_or(AodeError::ConstantPolynomial)?;
    let init = f.lc_in(lv);
    Ok(LeadingData {
        lv,
        lc: init.clone(),
        init,
    })
}

fn lv(f: &P) -> usize {
    f.max_var().expect("non-constant chain element")
}

fn init(f: &P) -> P {
    f.lc_in(lv(f))
}

/// A triangular system whose initials are regular modulo the chain.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularChain {
    pub polys: Vec<P>,
    pub initials: Vec<P>,
}

impl RegularChain {
    pub fn new(polys: Vec<P>) -> Self {
        let initials = polys.iter().map(init).collect();
        RegularChain { polys, initials }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Product of the initials.
    pub fn pinit(&self) -> P {
        self.initials.iter().fold(P::one(), |a, b| a.mul(b))
    }

    /// Leading variables in order.
    pub fn lv_pattern(&self) -> Vec<usize> {
        self.polys.iter().map(lv).collect()
    }

    fn cmp_canonical(&self, o: &Self) -> Ordering {
        self.lv_pattern().cmp(&o.lv_pattern()).then_with(|| {
            for (a, b) in self.polys.iter().zip(&o.polys) {
                let c = a.canonical_cmp(b);
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

/// True when the leading variables strictly increase and no element is constant.
pub fn is_triangular(t: &[P]) -> bool {
    let mut last = None;
    for f in t {
        match f.max_var() {
            None => return false,
            Some(v) => {
                if last.is_some_and(|l| v <= l) {
                    return false;
                }
                last = Some(v);
            }
        }
    }
    true
}

/// Iterated resultant `Res(f, T)`, eliminating from the top of the chain down.
pub fn res_against_chain(f: &P, t: &[P]) -> P {
    let mut r = f.clone();
    for g in t.iter().rev() {
        if r.is_zero() {
            break;
        }
        r = resultant(&r, g, lv(g));
    }
    r
}

/// Pseudo-remainder of `f` by every chain element, top down.
pub fn prem_chain(f: &P, t: &[P]) -> P {
    let mut r = f.clone();
    for g in t.iter().rev() {
        if r.is_zero() {
            break;
        }
        r = r.prem(g, lv(g));
    }
    r
}

pub fn is_regular_chain(t: &[P]) -> bool {
    if !is_triangular(t) {
        return false;
    }
    (0..t.len()).all(|i| !res_against_chain(&init(&t[i]), &t[..i]).is_zero())
}

/// Dimension of the zero set of a chain in `ambient_vars` variables.
pub fn chain_dimension(chain: &RegularChain, ambient_vars: usize) -> usize {
    ambient_vars.saturating_sub(chain.len())
}

fn rank_cmp(a: &P, b: &P) -> Ordering {
    match (a.max_var(), b.max_var()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => x
            .cmp(&y)
            .then(a.degree_in(x).cmp(&b.degree_in(y)))
            .then(a.total_degree().cmp(&b.total_degree()))
            .then(a.num_terms().cmp(&b.num_terms()))
            .then_with(|| a.canonical_cmp(b)),
    }
}

/// Ritt basic set of a list of non-constant polynomials.
fn basic_set(ps: &[P]) -> Vec<P> {
    let mut sorted: Vec<&P> = ps.iter().collect();
    sorted.sort_by(|a, b| rank_cmp(a, b));
    let mut b: Vec<P> = Vec::new();
    for f in sorted {
        let v = lv(f);
        if b.last().is_some_and(|g| lv(g) >= v) {
            continue;
        }
        if b.iter().all(|g| f.degree_in(lv(g)) < g.degree_in(lv(g))) {
            b.push(f.clone());
        }
    }
    b
}

const MAX_DEPTH: usize = 64;

/// Decomposes the zero set of `system` into quasi-components of regular chains.
pub fn triangularize(system: &[P]) -> Result<Vec<RegularChain>> {
    triangularize_with(system, false)
}

/// As `triangularize`; `keep_all` disables removal of redundant chains.
pub fn triangularize_with(system: &[P], keep_all: bool) -> Result<Vec<RegularChain>> {
    let mut out = Vec::new();
    decompose(system.to_vec(), &mut out, 0)?;
    let mut chains: Vec<RegularChain> = Vec::new();
    for c in out {
        if !chains.contains(&c) {
            chains.push(c);
        }
    }
    if !keep_all {
        chains = remove_redundant(chains);
    }
    chains.sort_by(|a, b| a.cmp_canonical(b));
    Ok(chains)
}

/// Normalizes, drops zeros and duplicates; `None` when a non-zero constant occurs.
fn clean(ps: Vec<P>) -> Option<Vec<P>> {
    let mut out: Vec<P> = Vec::new();
    for p in ps {
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return None;
        }
        let n = p.normalize();
        if !out.contains(&n) {
            out.push(n);
        }
    }
    Some(out)
}

fn with(ps: &[P], extra: P) -> Vec<P> {
    let mut v = ps.to_vec();
    v.push(extra);
    v
}

fn decompose(ps: Vec<P>, out: &mut Vec<RegularChain>, depth: usize) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(AodeError::Internal("triangular decomposition did not terminate".into()));
    }
    let Some(mut ps) = clean(ps) else {
        return Ok(());
    };
    if ps.is_empty() {
        // The whole space: the empty chain.
        out.push(RegularChain::new(vec![]));
        return Ok(());
    }
    // Characteristic set by repeated reduction.
    let cs = loop {
        let b = basic_set(&ps);
        let mut added = Vec::new();
        for f in &ps {
            if b.contains(f) {
                continue;
            }
            let r = prem_chain(f, &b);
            if !r.is_zero() {
                added.push(r);
            }
        }
        if added.is_empty() {
            break b;
        }
        ps.extend(added);
        match clean(ps) {
            Some(c) => ps = c,
            None => return Ok(()),
        }
    };

    // Split on reducible elements in at most two variables.
    for f in &cs {
        let vars = f.vars();
        if vars.len() > 2 {
            continue;
        }
        let (a, b) = (vars[0], *vars.last().unwrap());
        let to_biv = f.rename(|i| if i == a { 0 } else { 1 });
        let fac = factor_bivariate(&to_biv)?;
        if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
            continue;
        }
        for (g, _) in fac.factors {
            let back = g.rename(|i| if i == 0 { a } else { b });
            decompose(with(&ps, back), out, depth + 1)?;
        }
        return Ok(());
    }

    // Replace non-square-free elements.
    for f in &cs {
        let s = squarefree_part(f);
        if s.num_terms() != f.num_terms() || s != f.normalize() {
            return decompose(with(&ps, s), out, depth + 1);
        }
    }

    // Enforce regularity of the initials.
    for i in 0..cs.len() {
        let ii = init(&cs[i]);
        if ii.is_constant() {
            continue;
        }
        let r = prem_chain(&ii, &cs[..i]);
        if r.is_zero() {
            // The initial vanishes wherever the earlier initials do not.
            for k in 0..i {
                if !cs[k].lc_in(lv(&cs[k])).is_constant() {
                    decompose(with(&ps, init(&cs[k])), out, depth + 1)?;
                }
            }
            let v = lv(&cs[i]);
            let d = cs[i].degree_in(v);
            let reductum = cs[i].sub(&ii.mul_mono(&crate::poly::Mono::var(v, d)));
            let mut next: Vec<P> = ps.iter().filter(|p| **p != cs[i]).cloned().collect();
            next.push(ii);
            next.push(reductum);
            return decompose(next, out, depth + 1);
        }
        if res_against_chain(&ii, &cs[..i]).is_zero() {
            for j in (0..i).rev() {
                let g = poly_gcd(&r, &cs[j]);
                if g.contains_var(lv(&cs[j])) && g.normalize() != cs[j].normalize() {
                    let h = cs[j].div_exact(&g).expect("gcd divides");
                    decompose(with(&ps, g), out, depth + 1)?;
                    decompose(with(&ps, h), out, depth + 1)?;
                    return Ok(());
                }
            }
            // No splitting factor found: only the locus of the initial is kept.
            return decompose(with(&ps, ii), out, depth + 1);
        }
    }

    let chain = RegularChain::new(cs.clone());
    out.push(chain);
    for f in &cs {
        let ii = init(f);
        if !ii.is_constant() {
            decompose(with(&ps, ii), out, depth + 1)?;
        }
    }
    Ok(())
}

/// Drops chains whose quasi-component lies inside a chain of larger dimension.
fn remove_redundant(chains: Vec<RegularChain>) -> Vec<RegularChain> {
    let keep: Vec<bool> = chains
        .iter()
        .map(|c| {
            !chains.iter().any(|d| {
                d.len() < c.len()
                    && d.polys.iter().all(|g| prem_chain(g, &c.polys).is_zero())
                    && !res_against_chain(&d.pinit(), &c.polys).is_zero()
            })
        })
        .collect();
    chains
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;

    fn u(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn leading_data_examples() {
        let f = u(0).mul(&u(1)).sub(&P::one());
        let d = leading_data(&f).unwrap();
        assert_eq!((d.lv, d.init), (1, u(0)));
        let g = u(1).pow(2).add(&u(0).mul(&u(2)));
        assert_eq!(leading_data(&g).unwrap().lv, 2);
        assert_eq!(leading_data(&u(0).pow(3)).unwrap().init, P::one());
        assert_eq!(leading_data(&P::one()), Err(AodeError::ConstantPolynomial));
    }

    #[test]
    fn regularity() {
        let g1 = u(0).mul(&u(1)).sub(&P::one());
        let g2 = u(1).pow(2).add(&u(0).mul(&u(2)));
        assert!(is_regular_chain(&[g1.clone(), g2]));
        assert!(!is_regular_chain(&[u(0), u(0).mul(&u(1)).add(&P::one())]));
        assert!(is_regular_chain(&[g1]));
    }

    #[test]
    fn point_system() {
        let sys = vec![u(0).mul(&u(1)).sub(&P::one()), u(1).sub(&P::one())];
        let chains = triangularize(&sys).unwrap();
        assert_eq!(chains.len(), 1);
        for c in &chains {
            assert!(is_regular_chain(&c.polys));
            for f in &sys {
                assert!(prem_chain(f, &c.polys).is_zero());
            }
            // The chain cuts out u0 = 1, u1 = 1.
            let at = c.polys.iter().all(|g| {
                g.eval_var(0, &qi(1)).eval_var(1, &qi(1)).is_zero()
            });
            assert!(at);
        }
    }
}

//! Bivariate factorization over ℚ: evaluation, univariate factorization,
//! x-adic Hensel lifting and factor recombination.

use std::cmp::Ordering;

use super::gcd::{content, primitive_part};
use super::multipoly::{Mono, MultiPoly};
use super::squarefree::squarefree_decomposition;
use crate::arith::field::{qi, Field, Q};
use crate::arith::upoly::UPoly;
use crate::arith::zassenhaus::factor_rational;
use crate::error::{AodeError, Result};

/// Total degree above which factorization is refused.
pub const MAX_FACTOR_DEGREE: u32 = 48;
/// Maximum number of modular factors entering recombination.
const MAX_LIFTED_FACTORS: usize = 16;

/// `unit · ∏ factor^multiplicity`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    pub unit: F,
    pub factors: Vec<(MultiPoly<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> MultiPoly<F> {
        self.factors
            .iter()
            .fold(MultiPoly::constant(self.unit.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }
}

/// Irreducible factorization over ℚ of a polynomial in `u₀, u₁`.
pub fn factor_bivariate(f: &MultiPoly<Q>) -> Result<Factorization<Q>> {
    assert!(!f.is_zero(), "factorization of zero");
    if f.max_var().unwrap_or(0) > 1 {
        return Err(AodeError::Internal("factor_bivariate expects u0, u1 only".into()));
    }
    let degree = f.total_degree();
    if degree > MAX_FACTOR_DEGREE {
        return Err(AodeError::FactorizationLimit {
            degree: degree as usize,
            bound: MAX_FACTOR_DEGREE as usize,
        });
    }
    let mut factors: Vec<(MultiPoly<Q>, u32)> = Vec::new();
    let c0 = content(f, 1);
    push_univariate(&c0, 0, &mut factors);
    let rest = f.div_exact(&c0).expect("content divides");
    let c1 = content(&rest, 0);
    push_univariate(&c1, 1, &mut factors);
    let core = rest.div_exact(&c1).expect("content divides");
    for (g, m) in squarefree_decomposition(&core, 1) {
        for h in factor_squarefree(&g)? {
            factors.push((h.normalize(), m));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.canonical_cmp(b))
            .then(ma.cmp(mb))
    });
    let prod = factors
        .iter()
        .fold(MultiPoly::one(), |acc: MultiPoly<Q>, (g, m)| acc.mul(&g.pow(*m)));
    let unit = f.leading_coeff() / prod.leading_coeff();
    Ok(Factorization { unit, factors })
}

fn push_univariate(c: &MultiPoly<Q>, v: usize, out: &mut Vec<(MultiPoly<Q>, u32)>) {
    if c.is_constant() {
        return;
    }
    let p = c.to_upoly(v).expect("univariate content");
    for (g, m) in factor_rational(&p).1 {
        out.push((MultiPoly::from_upoly(&g, v).normalize(), m));
    }
}

/// Polynomial in `y` with coefficients truncated power series in `x`,
/// stored by powers of `x`.
type XPoly = Vec<UPoly<Q>>;

fn xmul(a: &XPoly, b: &XPoly, k: usize) -> XPoly {
    let mut out = vec![UPoly::zero(); k];
    for (i, ai) in a.iter().enumerate().take(k) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(k - i) {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn to_xpoly(g: &MultiPoly<Q>) -> XPoly {
    g.coeffs_in(0)
        .iter()
        .map(|c| c.to_upoly(1).expect("bivariate input"))
        .collect()
}

fn from_xpoly(a: &XPoly) -> MultiPoly<Q> {
    let mut out = MultiPoly::zero();
    for (i, c) in a.iter().enumerate() {
        let yc = MultiPoly::from_upoly(c, 1);
        out = out.add(&yc.mul_mono(&Mono::var(0, i as u32)));
    }
    out
}

/// Factors a square-free polynomial primitive in both variables.
fn factor_squarefree(g: &MultiPoly<Q>) -> Result<Vec<MultiPoly<Q>>> {
    if g.degree_in(1) <= 1 || g.degree_in(0) == 0 {
        return Ok(vec![g.clone()]);
    }
    // Choose among a few good evaluation points the one with fewest factors.
    let lcy = g.lc_in(1);
    let mut best: Option<(Q, Vec<UPoly<Q>>)> = None;
    let mut good = 0;
    for n in 0..200i64 {
        let a = if n % 2 == 0 { qi(n / 2) } else { qi(-(n + 1) / 2) };
        if lcy.eval_var(0, &a).constant_value().map_or(true, |c| Field::is_zero(&c)) {
            continue;
        }
        let ga = g.eval_var(0, &a).to_upoly(1).expect("univariate after evaluation");
        if ga.gcd(&ga.derivative()).deg() > 0 {
            continue;
        }
        let facs: Vec<UPoly<Q>> = factor_rational(&ga).1.into_iter().map(|(h, _)| h.monic()).collect();
        if facs.len() == 1 {
            return Ok(vec![g.clone()]);
        }
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((a, facs));
        }
        good += 1;
        if good >= 3 {
            break;
        }
    }
    let Some((a, facs)) = best else {
        return Err(AodeError::Internal("no good evaluation point".into()));
    };
    if facs.len() > MAX_LIFTED_FACTORS {
        return Err(AodeError::FactorizationLimit {
            degree: facs.len(),
            bound: MAX_LIFTED_FACTORS,
        });
    }
    let shift = MultiPoly::var(0).add(&MultiPoly::constant(a.clone()));
    let gs = g.substitute(0, &shift);
    let lc: UPoly<Q> = gs.lc_in(1).to_upoly(0).expect("leading coefficient in x");
    let k = gs.degree_in(0) as usize + lc.deg() + 1;
    let lifted = hensel_lift(&to_xpoly(&gs), &lc, &facs, k);
    let unshift = MultiPoly::var(0).sub(&MultiPoly::constant(a));
    Ok(recombine(gs, lifted, k)
        .into_iter()
        .map(|h| h.substitute(0, &unshift).normalize())
        .collect())
}

fn series_inverse(p: &UPoly<Q>, k: usize) -> Vec<Q> {
    let c0 = p.coeff(0).inverse();
    let mut inv = vec![c0.clone()];
    for n in 1..k {
        let mut s = qi(0);
        for i in 1..=n {
            s += p.coeff(i) * &inv[n - i];
        }
        inv.push(-s * &c0);
    }
    inv
}

fn hensel_lift(g: &XPoly, lc: &UPoly<Q>, facs: &[UPoly<Q>], k: usize) -> Vec<XPoly> {
    let inv: XPoly = series_inverse(lc, k).into_iter().map(UPoly::constant).collect();
    let mut target = xmul(g, &inv, k);
    let mut lifted = Vec::new();
    for (idx, h) in facs.iter().enumerate() {
        if idx + 1 == facs.len() {
            lifted.push(target.clone());
            break;
        }
        let rest = facs[idx + 1..].iter().fold(UPoly::one(), |acc, f| acc.mul(f));
        let (a, b) = lift_pair(&target, h, &rest, k);
        lifted.push(a);
        target = b;
    }
    lifted
}

fn lift_pair(target: &XPoly, a0: &UPoly<Q>, b0: &UPoly<Q>, k: usize) -> (XPoly, XPoly) {
    let (_, s, t) = a0.ext_gcd(b0);
    let _ = s;
    let mut a = vec![a0.clone()];
    let mut b = vec![b0.clone()];
    for n in 1..k {
        let mut e = target.get(n).cloned().unwrap_or_else(UPoly::zero);
        for i in 0..=n {
            if let (Some(ai), Some(bj)) = (a.get(i), b.get(n - i)) {
                e = e.sub(&ai.mul(bj));
            }
        }
        let da = t.mul(&e).rem(a0);
        let db = e.sub(&b0.mul(&da)).div_exact(a0).expect("Hensel step is exact");
        a.push(da);
        b.push(db);
    }
    (a, b)
}

fn recombine(mut g: MultiPoly<Q>, mut pool: Vec<XPoly>, k: usize) -> Vec<MultiPoly<Q>> {
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        let idx: Vec<usize> = (0..pool.len()).collect();
        for subset in combinations(&idx, size) {
            let lc: XPoly = to_xpoly(&g.lc_in(1));
            let mut prod = lc;
            for &i in &subset {
                prod = xmul(&prod, &pool[i], k);
            }
            let cand = primitive_part(&from_xpoly(&prod), 1);
            if cand.degree_in(1) == 0 {
                continue;
            }
            if let Some(quot) = g.div_exact(&cand) {
                out.push(cand);
                g = quot;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, p)| p)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if g.degree_in(1) > 0 {
        out.push(primitive_part(&g, 1));
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Orders polynomials by total degree, then canonically.
pub fn factor_order(a: &MultiPoly<Q>, b: &MultiPoly<Q>) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| a.canonical_cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MultiPoly<Q>;

    fn u(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn irreducible_and_products() {
        let h = u(0).mul(&u(1)).sub(&P::one());
        let f = factor_bivariate(&h).unwrap();
        assert_eq!(f.factors, vec![(h.clone(), 1)]);

        let g = u(0).pow(2).mul(&u(1)).sub(&u(1));
        let f = factor_bivariate(&g).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(), g);

        let p = h.mul(&u(1).sub(&P::one()));
        let f = factor_bivariate(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn needs_lifting() {
        // (y^2 - x)(y^2 - x - 1)(y + x^2): both sides genuinely bivariate.
        let a = u(1).pow(2).sub(&u(0));
        let b = u(1).pow(2).sub(&u(0)).sub(&P::one());
        let c = u(1).add(&u(0).pow(2));
        let f = a.mul(&b).mul(&c).scale(&qi(-3));
        let fac = factor_bivariate(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
    }
}

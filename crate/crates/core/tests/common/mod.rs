//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use aode::arith::field::{qi, Field, Q};
use aode::chains::{chain_dimension, is_regular_chain, prem_chain, triangularize};
use aode::poly::{factor_bivariate, poly_gcd, resultant, squarefree_part, Mono, MultiPoly};
use aode::DiffSystem;
use proptest::prelude::*;

pub type P = MultiPoly<Q>;

pub const EXAMPLE: &str = "y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0";

pub fn corpus() -> Vec<String> {
    include_str!("../data/corpus.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

pub fn system(text: &str) -> DiffSystem {
    aode::parse::parse_system_with(text, 16).expect("corpus system parses").system
}

/// `Σ c·u₀^a·u₁^b` from `(c, a, b)` triples.
pub fn bivariate(terms: &[(i64, u32, u32)]) -> P {
    P::from_terms(terms.iter().map(|&(c, a, b)| (Mono::new(vec![a, b]), qi(c))))
}

/// Small random polynomial in `nvars` variables with exponents below `max_exp`.
pub fn poly_strategy(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = P> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(0..max_exp, nvars)), 1..=max_terms)
        .prop_map(|ts| P::from_terms(ts.into_iter().map(|(c, e)| (Mono::new(e), qi(c)))))
}

pub fn nonconstant(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = P> {
    poly_strategy(nvars, max_exp, max_terms).prop_filter("non-constant", |p| !p.is_constant())
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// `h` divides `gcd(f·h, g·h)`.
pub fn prop_gcd(f: &P, g: &P, h: &P) -> Result<(), TestCaseError> {
    if h.is_zero() {
        return Ok(());
    }
    let d = poly_gcd(&f.mul(h), &g.mul(h));
    check(d.div_exact(h).is_some(), "h does not divide the gcd")
}

/// `Res_{u₁}(f, g) = 0` exactly when `f` and `g` share a factor involving `u₁`.
pub fn prop_resultant(f: &P, g: &P, c: &P) -> Result<(), TestCaseError> {
    let (f, g) = (f.mul(c), g.mul(c));
    if f.degree_in(1) == 0 || g.degree_in(1) == 0 {
        return Ok(());
    }
    let r = resultant(&f, &g, 1);
    let shared = poly_gcd(&f, &g).degree_in(1) > 0;
    check(r.is_zero() == shared, "resultant vanishing disagrees with the gcd")
}

/// The square-free part has no common factor with its derivative in its main variable.
pub fn prop_squarefree(f: &P, g: &P) -> Result<(), TestCaseError> {
    let p = f.mul(f).mul(g);
    if p.is_constant() {
        return Ok(());
    }
    let s = squarefree_part(&p);
    let v = s.max_var().expect("non-constant");
    check(poly_gcd(&s, &s.derivative(v)).degree_in(v) == 0, "square-free part has a repeated factor")?;
    check(p.div_exact(&s).is_some(), "square-free part does not divide the input")
}

/// The factorization multiplies back to the input.
pub fn prop_factor(f: &P) -> Result<(), TestCaseError> {
    if f.is_zero() {
        return Ok(());
    }
    let fac = factor_bivariate(f).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(fac.expand() == *f, "factorization does not reconstruct the input")
}

/// Chains are regular, reduce every input to zero, and the dimension does
/// not depend on the input order.
pub fn prop_chains(sys: &[P]) -> Result<(), TestCaseError> {
    let sys: Vec<P> = sys.iter().filter(|p| !p.is_constant()).cloned().collect();
    if sys.is_empty() {
        return Ok(());
    }
    let chains = triangularize(&sys).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for c in &chains {
        check(is_regular_chain(&c.polys), "chain is not regular")?;
        for f in &sys {
            check(prem_chain(f, &c.polys).is_zero(), "input does not reduce to zero")?;
        }
    }
    let dims = |cs: &[aode::chains::RegularChain]| cs.iter().map(|c| chain_dimension(c, 3)).max();
    let mut rev = sys.clone();
    rev.reverse();
    let back = triangularize(&rev).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(dims(&chains) == dims(&back), "dimension depends on the input order")
}

/// A random square-free `G(u₀, u₁)` that involves both variables and has no
/// factor in one variable alone.
pub fn random_reduced_equation<R: rand::Rng>(rng: &mut R) -> P {
    loop {
        let n = rng.gen_range(2..=4);
        let terms: Vec<(i64, u32, u32)> = (0..n)
            .map(|_| (rng.gen_range(-5..=5), rng.gen_range(0..=3), rng.gen_range(0..=3)))
            .collect();
        let g = bivariate(&terms).normalize();
        if g.degree_in(0) == 0 || g.degree_in(1) == 0 {
            continue;
        }
        if squarefree_part(&g).normalize() != g {
            continue;
        }
        if aode::poly::strip_univariate_factors(&g).stripped != g {
            continue;
        }
        return g;
    }
}

pub fn is_rational(q: &aode::arith::extension::AlgebraicNumber) -> bool {
    q.as_rational().is_some()
}

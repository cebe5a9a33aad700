//! Reduction of a dimension-one system to a first-order equation `H(y, y') = 0`.

use crate::arith::field::Q;
use crate::chains::{chain_dimension, triangularize, RegularChain};
use crate::error::{AodeError, Result};
use crate::poly::{poly_gcd, poly_lcm, squarefree_part, strip_univariate_factors, Mono, MultiPoly, MultiRatFunc};
use crate::system::DiffSystem;

type P = MultiPoly<Q>;
type R = MultiRatFunc<Q>;

/// `Σ ∂F/∂u_i · u_{i+1}`.
pub fn total_derivative(f: &P) -> P {
    let mut out = P::zero();
    for v in f.vars() {
        out = out.add(&f.derivative(v).mul(&P::var(v + 1)));
    }
    out
}

/// Splits the `(j-1)`-th derivative of `g1` as `separant · u_j + R`.
pub fn ritt_split(g1: &P, j: usize) -> (P, P) {
    assert!(j >= 2, "ritt_split needs j >= 2");
    let mut d = g1.clone();
    for _ in 1..j {
        d = total_derivative(&d);
    }
    let sep = g1.derivative(1);
    let r = d.sub(&sep.mul(&P::var(j)));
    debug_assert!(!r.contains_var(j));
    (sep, r)
}

/// Rational functions `B_2 … B_m` in `u₀, u₁` expressing `y'' … y^(m)`
/// on the curve `g1 = 0`.
pub fn compute_b(g1: &P, m: usize) -> Vec<R> {
    let mut bs: Vec<R> = Vec::new();
    for j in 2..=m {
        let (sep, r) = ritt_split(g1, j);
        let a = R::new(r.neg(), sep);
        let mut args = vec![R::from_poly(P::var(0)), R::from_poly(P::var(1))];
        args.extend(bs.iter().cloned());
        // A_j involves u₀ … u_{j-1}; substitute the earlier B's.
        let num = R::eval_poly(&a.num, &args);
        let den = R::eval_poly(&a.den, &args);
        bs.push(num.div(&den));
    }
    bs
}

/// `H_j = num(G_j(u₀, u₁, B_2, …, B_j))` for every chain element and their gcd.
pub fn chain_reduced_equation(chain: &[P]) -> (P, Vec<P>) {
    let g1 = chain[0].clone();
    if chain.len() == 1 {
        return (g1.clone(), vec![g1]);
    }
    let bs = compute_b(&g1, chain.len());
    let mut args = vec![R::from_poly(P::var(0)), R::from_poly(P::var(1))];
    args.extend(bs);
    let mut hs = vec![g1.clone()];
    let mut h = g1;
    for gj in &chain[1..] {
        let hj = R::eval_poly(gj, &args).num.normalize();
        h = poly_gcd(&h, &hj);
        hs.push(hj);
    }
    (h, hs)
}

/// Rational expressions of `y^(j)` under `y = 1/w`, as numerators over `w^(j+1)`.
fn inverted_derivatives(m: usize) -> Vec<R> {
    let mut out = Vec::new();
    let mut num = P::one();
    for j in 0..=m {
        let k = j as u32 + 1;
        out.push(R {
            num: num.clone(),
            den: P::term(Q::from_integer(1.into()), Mono::var(0, k)),
        });
        // d/dx (N / w^k) = (D(N) w - k N w') / w^(k+1)
        num = total_derivative(&num)
            .mul(&P::var(0))
            .sub(&num.mul(&P::var(1)).scale(&Q::from_integer(k.into())));
    }
    out
}

/// The system satisfied by `w = 1/y`.
pub fn invert_system(s: &DiffSystem) -> Result<DiffSystem> {
    let args = inverted_derivatives(s.order);
    let eqs = s
        .equations
        .iter()
        .map(|f| R::eval_poly(f, &args).num.normalize())
        .collect();
    DiffSystem::new(eqs)
}

/// Reduced equation of a single polynomial `H(u₀, u₁)` under `y = 1/w`.
pub fn invert_equation(h: &P) -> P {
    let args = inverted_derivatives(1);
    R::eval_poly(h, &args).num.normalize()
}

/// Per-chain record of the reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainReduction {
    pub chain: RegularChain,
    /// Square-free `G₁` with univariate factors removed.
    pub g1_normalized: P,
    /// Factors of `G₁` in `u₀` alone and `u₁` alone.
    pub y_factors: P,
    pub yprime_factors: P,
    /// `H₁ … H_m`.
    pub intermediates: Vec<P>,
    pub h: P,
}

/// Why a chain did not contribute to the reduced equation.
#[derive(Clone, Debug, PartialEq)]
pub enum DiscardReason {
    DimensionZero,
    AlgebraicInY,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedEquation {
    pub h: P,
    pub per_chain: Vec<ChainReduction>,
    pub discarded: Vec<(RegularChain, DiscardReason)>,
    /// Polynomial in `u₀` whose roots are the constant solutions; zero when
    /// every constant solves the system.
    pub constant_solutions: P,
}

impl ReducedEquation {
    /// Union of the factors in `u₁` alone stripped from the chains.
    pub fn yprime_factors(&self) -> P {
        self.per_chain
            .iter()
            .fold(P::one(), |acc, c| poly_lcm(&acc, &c.yprime_factors))
    }
}

/// `gcd_i F_i(u₀, 0, …, 0)`.
pub fn constant_solution_polynomial(s: &DiffSystem) -> P {
    let mut g = P::zero();
    for f in &s.equations {
        let mut c = f.clone();
        for v in 1..=s.order {
            c = c.eval_var(v, &Q::from_integer(0.into()));
        }
        g = poly_gcd(&g, &c);
    }
    g
}

pub fn reduce_system(s: &DiffSystem) -> Result<ReducedEquation> {
    let m = s.order;
    let chains = triangularize(&s.equations)?;
    let mut per_chain = Vec::new();
    let mut discarded = Vec::new();
    for chain in chains {
        let dim = chain_dimension(&chain, s.ambient_vars());
        if dim > 1 {
            return Err(AodeError::DimensionError { dimension: dim });
        }
        if dim == 0 {
            discarded.push((chain, DiscardReason::DimensionZero));
            continue;
        }
        let pattern = chain.lv_pattern();
        if pattern.first() == Some(&0) {
            discarded.push((chain, DiscardReason::AlgebraicInY));
            continue;
        }
        if pattern != (1..=m).collect::<Vec<_>>() {
            return Err(AodeError::Internal(format!(
                "chain has leading variables {pattern:?}, expected u1..u{m}"
            )));
        }
        per_chain.push(reduce_chain(chain));
    }
    if per_chain.is_empty() {
        return Err(AodeError::TrivialSystem);
    }
    let h = per_chain
        .iter()
        .fold(P::one(), |acc, c| poly_lcm(&acc, &c.h))
        .normalize();
    Ok(ReducedEquation {
        h,
        per_chain,
        discarded,
        constant_solutions: constant_solution_polynomial(s).normalize(),
    })
}

fn reduce_chain(chain: RegularChain) -> ChainReduction {
    let sqf = squarefree_part(&chain.polys[0]);
    let st = strip_univariate_factors(&sqf);
    let g1 = st.stripped.clone();
    let (h, intermediates) = if g1.is_constant() {
        // Only univariate factors: no non-linear solutions on this chain.
        let mut polys = chain.polys.clone();
        polys[0] = sqf;
        let (_, hs) = chain_reduced_equation(&polys);
        (P::one(), hs)
    } else {
        let mut polys = chain.polys.clone();
        polys[0] = g1.clone();
        let (h, hs) = chain_reduced_equation(&polys);
        (strip_univariate_factors(&h).stripped, hs)
    };
    ChainReduction {
        chain,
        g1_normalized: g1,
        y_factors: st.y_factors,
        yprime_factors: st.yprime_factors,
        intermediates,
        h,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;

    fn u(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn derivatives_and_split() {
        let g = u(0).mul(&u(1)).sub(&P::one());
        assert_eq!(total_derivative(&g), u(1).pow(2).add(&u(0).mul(&u(2))));
        assert!(total_derivative(&P::constant(qi(3))).is_zero());
        let (sep, r) = ritt_split(&g, 3);
        assert_eq!(sep, u(0));
        assert_eq!(r, u(1).mul(&u(2)).scale(&qi(3)));
    }

    #[test]
    fn b_for_hyperbola() {
        let g = u(0).mul(&u(1)).sub(&P::one());
        let b = compute_b(&g, 2);
        assert_eq!(b[0], R::new(u(1).pow(2).neg(), u(0)));
        assert!(compute_b(&u(1).sub(&P::one()), 2)[0].is_zero());
    }

    #[test]
    fn inversion() {
        let s = DiffSystem::new(vec![u(1).sub(&u(0).pow(2))]).unwrap();
        assert_eq!(invert_system(&s).unwrap().equations, vec![u(1).add(&P::one())]);
        let s = DiffSystem::new(vec![u(1).sub(&P::one())]).unwrap();
        assert_eq!(invert_system(&s).unwrap().equations, vec![u(1).add(&u(0).pow(2))]);
    }
}

#[cfg(test)]
mod pipeline_tests {
    use super::*;
    use crate::parse::parse_system_with;

    #[test]
    fn example_reduces_to_hyperbola() {
        let s = parse_system_with("y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0", 16)
            .unwrap()
            .system;
        let r = reduce_system(&s).unwrap();
        assert_eq!(r.h.display_y(), "y*y' - 1");
        let hs: Vec<String> = r.per_chain.iter().map(|c| c.h.display_y()).collect();
        assert_eq!(hs, vec!["1", "y*y' - 1"]);
    }

    #[test]
    fn dimension_two_is_rejected() {
        let s = parse_system_with("y*y'' - y'^2 + y' = 0", 16).unwrap().system;
        assert_eq!(reduce_system(&s), Err(AodeError::DimensionError { dimension: 2 }));
    }
}

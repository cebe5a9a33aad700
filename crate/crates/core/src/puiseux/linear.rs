//! Solutions of the form `y = αx + β` with `α ≠ 0`.
//!
//! For an autonomous system `αx + β` solves it exactly when `αx` does
//! (shift `x` by `β/α`), so only `α` has to be determined and `β` is free.

use crate::arith::extension::AlgebraicNumber;
use crate::arith::field::{Field, Q};
use crate::arith::roots::univariate_roots;
use crate::arith::upoly::UPoly;
use crate::poly::MultiPoly;
use crate::system::DiffSystem;

type P = MultiPoly<Q>;

#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    /// `y = α·x + β` for every `β`.
    Slope(AlgebraicNumber),
    /// Every line solves the system.
    AnyLine,
}

impl LinearSolution {
    pub fn display(&self) -> String {
        match self {
            LinearSolution::Slope(a) => {
                let s = a.to_string();
                if s == "1" {
                    "y = x + b".to_string()
                } else if s == "-1" {
                    "y = -x + b".to_string()
                } else if s.contains([' ', '+']) || s[1..].contains('-') {
                    format!("y = ({s})*x + b")
                } else {
                    format!("y = {s}*x + b")
                }
            }
            LinearSolution::AnyLine => "y = a*x + b".to_string(),
        }
    }
}

/// Polynomial in `α` whose non-zero roots are the slopes of linear solutions.
pub fn slope_polynomial(s: &DiffSystem) -> UPoly<Q> {
    // u₀ ↦ α·x (x as u₁), u₁ ↦ α (u₀), higher derivatives ↦ 0.
    let alpha = P::var(0);
    let x = P::var(1);
    let mut subs = vec![alpha.mul(&x), alpha.clone()];
    subs.extend((2..=s.order).map(|_| P::zero()));
    let mut g = UPoly::<Q>::zero();
    for f in &s.equations {
        let r = f.substitute_all(&subs);
        for c in r.coeffs_in(1) {
            g = g.gcd(&c.to_upoly(0).expect("polynomial in alpha"));
        }
    }
    g
}

pub fn linear_solutions(s: &DiffSystem) -> Vec<LinearSolution> {
    let g = slope_polynomial(s);
    if g.is_zero() {
        return vec![LinearSolution::AnyLine];
    }
    univariate_roots(&g)
        .into_iter()
        .filter(|r| !r.value.is_zero())
        .map(|r| LinearSolution::Slope(r.value))
        .collect()
}

/// Exact check that `y = αx + β` with `α ≠ 0` solves every equation.
pub fn is_linear_solution(s: &DiffSystem, alpha: &Q, beta: &Q) -> bool {
    let line = P::constant(alpha.clone()).mul(&P::var(1)).add(&P::constant(beta.clone()));
    let mut subs = vec![line, P::constant(alpha.clone())];
    subs.extend((2..=s.order).map(|_| P::zero()));
    !alpha.is_zero() && s.equations.iter().all(|f| f.substitute_all(&subs).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;
    use crate::parse::parse_system_with;

    fn sys(t: &str) -> DiffSystem {
        parse_system_with(t, 16).unwrap().system
    }

    #[test]
    fn slopes() {
        let l = linear_solutions(&sys("y' = 1"));
        assert_eq!(l, vec![LinearSolution::Slope(AlgebraicNumber::one())]);
        let l: Vec<String> = linear_solutions(&sys("y'^2 - 4 = 0")).iter().map(|s| s.display()).collect();
        assert_eq!(l, vec!["y = -2*x + b", "y = 2*x + b"]);
        assert!(linear_solutions(&sys("y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0")).is_empty());
        assert_eq!(linear_solutions(&sys("y'' = 0")), vec![LinearSolution::AnyLine]);
        assert!(is_linear_solution(&sys("y'^2 - 4 = 0"), &qi(2), &qi(7)));
        assert!(!is_linear_solution(&sys("y*y' - 1 = 0"), &qi(1), &qi(0)));
    }
}

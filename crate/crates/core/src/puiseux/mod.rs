//! Puiseux-type solutions of first-order autonomous equations.

pub mod family;
pub mod linear;
pub mod local;
pub mod solve;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::extension::AlgebraicNumber;
use crate::arith::field::{qi, Field, Q};
use crate::arith::upoly::push_term;
use crate::series::{ExpansionPoint, TruncatedSeries};

pub use family::{specialize, SolutionFamily};
pub use linear::{linear_solutions, LinearSolution};
pub use local::{newton_step, solve_local, Indicial, LocalBranch, LocalEq, LocalOptions, NewtonStep};
pub use solve::{
    critical_values, default_order, puiseux_solve, puiseux_solve_infinity, puiseux_solve_system, solve_at_point,
    solve_at_value, reduced_star, solve_system_at_point,
    Diagnostic, LocalSolutions, SystemSolution,
};

/// Value of the solution at the expansion point.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialValue {
    Finite(AlgebraicNumber),
    Infinite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxTruncation {
    pub point: ExpansionPoint,
    /// Expansion in powers of `x - center` (only meaningful at zero).
    pub center: Q,
    pub initial: InitialValue,
    /// The terms describe `1/y` rather than `y`.
    pub reciprocal: bool,
    /// `(exponent of x, coefficient)` in order of significance.
    pub terms: Vec<(Q, AlgebraicNumber)>,
    pub ramification: u32,
    /// Terms are complete up to this order (`x^N` at zero, `x^(-N)` at infinity).
    pub truncation_order: Q,
    /// Series precision in `κ`; `None` when exact.
    pub precision: Option<Q>,
    pub unique_extension: bool,
    pub exact: bool,
    /// Exponents where a free coefficient was set to zero.
    pub free_exponents: Vec<Q>,
    pub certificate: Option<Indicial>,
}

/// Least common denominator of a list of exponents.
pub fn ramification_of<'a>(exps: impl IntoIterator<Item = &'a Q>) -> u32 {
    let mut n = num_bigint::BigInt::one();
    for e in exps {
        n = n.lcm(e.denom());
    }
    u32::try_from(n).unwrap_or(u32::MAX)
}

impl PuiseuxTruncation {
    pub fn to_series(&self) -> TruncatedSeries<AlgebraicNumber> {
        match &self.precision {
            None => TruncatedSeries::exact(self.point, self.terms.clone()),
            Some(p) => TruncatedSeries::with_precision(self.point, self.terms.clone(), p.clone()),
        }
    }

    /// Field containing every coefficient.
    pub fn coefficient_field(&self) -> Option<String> {
        self.terms
            .iter()
            .find_map(|(_, c)| c.modulus())
            .map(|m| format!("Q({})", m.symbol().trim_start_matches('-')))
    }

    /// Leading coefficient value at the point, `None` at a pole.
    pub fn value(&self) -> Option<AlgebraicNumber> {
        match (&self.initial, self.reciprocal) {
            (InitialValue::Finite(v), false) => Some(v.clone()),
            _ => None,
        }
    }

    fn variable(&self) -> String {
        if self.center == qi(0) || self.point == ExpansionPoint::Infinity {
            "x".to_string()
        } else if self.center.is_negative() {
            format!("(x + {})", -&self.center)
        } else {
            format!("(x - {})", self.center)
        }
    }

    /// Human-readable sum, e.g. `sqrt(2)*x^(1/2)`.
    pub fn display_terms(&self) -> String {
        format_terms(&self.terms, &self.variable())
    }

    pub fn display(&self) -> String {
        let body = self.display_terms();
        let tail = if self.exact {
            String::new()
        } else {
            // Next possible exponent in κ, as an exponent of x.
            let k = self.precision.clone().unwrap_or_else(|| self.truncation_order.clone());
            let o = format!("O({}^{})", self.variable(), paren(&(self.point.sigma() * k)));
            format!(" + {o}")
        };
        let lhs = if self.reciprocal { "1/y" } else { "y" };
        format!("{lhs} = {body}{tail}")
    }
}

fn paren(e: &Q) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

pub(crate) fn format_terms<F: Field>(terms: &[(Q, F)], var: &str) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in terms {
        let mono = if *e == qi(0) {
            String::new()
        } else if *e == qi(1) {
            var.to_string()
        } else {
            format!("{var}^{}", paren(e))
        };
        push_term(&mut out, c, &mono);
    }
    out
}

//! Substitution oracle: plugs a truncated series into a system and checks
//! that every residual coefficient the truncation determines vanishes.

use serde::Serialize;

use crate::arith::field::{Field, Q};
use crate::error::Result;
use crate::puiseux::PuiseuxTruncation;
use crate::reduction::invert_system;
use crate::series::TruncatedSeries;
use crate::system::DiffSystem;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquationResidual {
    /// Exponent of the first non-zero determined residual term, if any.
    pub first_nonzero: Option<String>,
    /// The residual is known up to (excluding) this order, `None` when exact.
    pub known_below: Option<String>,
    /// Lower bound on the residual valuation in `κ`; `None` for an exact zero.
    #[serde(skip)]
    pub valuation_bound: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub residuals: Vec<EquationResidual>,
}

impl Verification {
    /// Smallest residual valuation bound across the equations (`κ`).
    pub fn min_valuation(&self) -> Option<Q> {
        self.residuals.iter().filter_map(|r| r.valuation_bound.clone()).min()
    }
}

/// Residual of every equation of `s` at `y`.
pub fn verify_series<F: Field>(s: &DiffSystem, y: &TruncatedSeries<F>) -> Verification {
    let sigma = y.point().sigma();
    let mut ok = true;
    let mut residuals = Vec::new();
    for f in &s.equations {
        let r = y.substitute_into(f);
        let first = r.leading_kappa();
        ok &= first.is_none();
        residuals.push(EquationResidual {
            first_nonzero: first.as_ref().map(|k| (&sigma * k).to_string()),
            known_below: r.kappa_precision().map(|p| (&sigma * p).to_string()),
            valuation_bound: r.valuation_bound(),
        });
    }
    Verification { ok, residuals }
}

/// Checks a truncation against `s`; reciprocal truncations are checked
/// against the system satisfied by `1/y`. The truncation must also reach
/// `order`.
pub fn verify_truncation(s: &DiffSystem, t: &PuiseuxTruncation, order: &Q) -> Result<Verification> {
    let series = t.to_series();
    let mut v = if t.reciprocal {
        verify_series(&invert_system(s)?, &series)
    } else {
        verify_series(s, &series)
    };
    v.ok &= t.exact || t.truncation_order >= *order;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;
    use crate::parse::parse_system_with;
    use crate::series::ExpansionPoint;

    #[test]
    fn wrong_slope_is_rejected() {
        let s = parse_system_with("y' = 1", 16).unwrap().system;
        let y = TruncatedSeries::with_precision(ExpansionPoint::Zero, [(qi(0), qi(1)), (qi(1), qi(2))], qi(2));
        let v = verify_series(&s, &y);
        assert!(!v.ok);
        assert_eq!(v.residuals[0].first_nonzero.as_deref(), Some("0"));
        let y = TruncatedSeries::exact(ExpansionPoint::Zero, [(qi(0), qi(1)), (qi(1), qi(1))]);
        let v = verify_series(&s, &y);
        assert!(v.ok);
        assert_eq!(v.min_valuation(), None);
    }
}

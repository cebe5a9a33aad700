//! Enumeration of solution truncations of `H(y, y') = 0` and of a system.

use serde::Serialize;

use crate::arith::extension::AlgebraicNumber;
use crate::arith::field::{qi, Field, Q};
use crate::arith::roots::univariate_roots;
use crate::error::{AodeError, Result};
use crate::poly::{factor_bivariate, squarefree_part, strip_univariate_factors, Mono, MultiPoly};
use crate::reduction::{invert_equation, reduce_system, ReducedEquation};
use crate::series::{ExpansionPoint, TruncatedSeries};
use crate::system::DiffSystem;
use crate::verify::{verify_series, verify_truncation, Verification};

use super::family::{exceptional_polynomials, family, SolutionFamily};
use super::linear::{linear_solutions, LinearSolution};
use super::local::{solve_local, LocalBranch, LocalEq, LocalOptions};
use super::{ramification_of, InitialValue, PuiseuxTruncation};

type P = MultiPoly<Q>;
type K = AlgebraicNumber;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    OrderTooSmall,
    ExtensionTowerLimit,
    DepthCap,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LocalSolutions {
    pub families: Vec<SolutionFamily>,
    /// Branches at each exceptional initial value.
    pub critical: Vec<(K, Vec<PuiseuxTruncation>)>,
    /// Branches with `y(0) = ∞`, as truncations of `1/y`.
    pub poles: Vec<PuiseuxTruncation>,
    pub diagnostics: Vec<Diagnostic>,
}

impl LocalSolutions {
    pub fn truncations(&self) -> impl Iterator<Item = &PuiseuxTruncation> {
        self.critical.iter().flat_map(|(_, b)| b).chain(&self.poles)
    }
}

/// `max(3, total degree of H)`.
pub fn default_order(h: &P) -> Q {
    qi(h.total_degree().max(3) as i64)
}

/// Initial values where the generic family does not apply, in the order of
/// their minimal polynomials.
pub fn critical_values(h: &P) -> Vec<K> {
    exceptional_polynomials(h)
        .iter()
        .flat_map(univariate_roots)
        .map(|r| r.value)
        .collect()
}

fn lift(h: &P) -> MultiPoly<K> {
    h.map(K::from_rational)
}

/// `H(y₀ + z, w)` as a local equation at zero.
fn local_at(h: &P, y0: &K) -> LocalEq {
    let shifted = lift(h).substitute(0, &MultiPoly::var(0).add(&MultiPoly::constant(y0.clone())));
    LocalEq::from_poly(&shifted, ExpansionPoint::Zero)
}

fn convert(
    b: LocalBranch,
    point: ExpansionPoint,
    initial: InitialValue,
    reciprocal: bool,
    center: &Q,
    requested: &Q,
    diags: &mut Vec<Diagnostic>,
) -> PuiseuxTruncation {
    let sign = point.sigma();
    let mut terms: Vec<(Q, K)> = b.terms.into_iter().map(|(e, c)| (&sign * e, c)).collect();
    if let (InitialValue::Finite(v), false) = (&initial, reciprocal) {
        if !v.is_zero() {
            terms.insert(0, (qi(0), v.clone()));
        }
    }
    let t = PuiseuxTruncation {
        point,
        center: center.clone(),
        initial,
        reciprocal,
        ramification: ramification_of(terms.iter().map(|(e, _)| e)),
        terms,
        truncation_order: b.order.clone(),
        precision: b.next,
        unique_extension: b.unique,
        exact: b.exact,
        free_exponents: b.free.iter().map(|e| &sign * e).collect(),
        certificate: b.indicial,
    };
    if b.order > *requested {
        diags.push(Diagnostic {
            kind: DiagnosticKind::OrderTooSmall,
            message: format!(
                "order {requested} is below the determinacy bound {} of branch {}; extended",
                b.order,
                t.display_terms()
            ),
        });
    }
    if b.depth_capped {
        diags.push(Diagnostic {
            kind: DiagnosticKind::DepthCap,
            message: format!("branch {} stopped at the recursion cap", t.display_terms()),
        });
    }
    t
}

fn tower_diag(at: &str, e: AodeError, diags: &mut Vec<Diagnostic>) -> Result<()> {
    match e {
        AodeError::ExtensionTowerLimit(msg) => {
            diags.push(Diagnostic {
                kind: DiagnosticKind::ExtensionTowerLimit,
                message: format!("{at}: {msg}"),
            });
            Ok(())
        }
        e => Err(e),
    }
}

fn branches_at(h: &P, y0: &K, center: &Q, order: &Q, diags: &mut Vec<Diagnostic>) -> Result<Vec<PuiseuxTruncation>> {
    let opts = LocalOptions {
        order: order.clone(),
        pole: false,
    };
    let bs = solve_local(&local_at(h, y0), &opts)?;
    Ok(bs
        .into_iter()
        .map(|b| convert(b, ExpansionPoint::Zero, InitialValue::Finite(y0.clone()), false, center, order, diags))
        .collect())
}

/// Removes the largest power of `u₀` dividing `h`.
fn strip_u0_power(h: &P) -> P {
    let k = h.terms().map(|(m, _)| m.exp(0)).min().unwrap_or(0);
    if k == 0 {
        return h.clone();
    }
    h.div_exact(&P::term(qi(1), Mono::var(0, k))).expect("monomial divides")
}

fn pole_branches(h: &P, order: &Q, diags: &mut Vec<Diagnostic>) -> Result<Vec<PuiseuxTruncation>> {
    let inv = strip_u0_power(&invert_equation(h));
    if inv.is_constant() {
        return Ok(vec![]);
    }
    let opts = LocalOptions {
        order: order.clone(),
        pole: true,
    };
    let eq = LocalEq::from_poly(&lift(&inv), ExpansionPoint::Zero);
    Ok(solve_local(&eq, &opts)?
        .into_iter()
        .map(|b| convert(b, ExpansionPoint::Zero, InitialValue::Infinite, true, &qi(0), order, diags))
        .collect())
}

/// Families, exceptional branches and pole branches of `H = 0` at zero.
/// `H` must be square-free without factors in `u₀` or `u₁` alone.
pub fn puiseux_solve(h: &P, order: &Q) -> Result<LocalSolutions> {
    let mut out = LocalSolutions::default();
    if h.is_constant() {
        return Ok(out);
    }
    let n = order.ceil().to_integer();
    let n = u32::try_from(n).unwrap_or(0).max(1);
    for (f, _) in factor_bivariate(h)?.factors {
        if f.contains_var(1) {
            out.families.push(family(&f, h, n));
        }
    }
    for y0 in critical_values(h) {
        let mut diags = Vec::new();
        match branches_at(h, &y0, &qi(0), order, &mut diags) {
            Ok(bs) => out.critical.push((y0, bs)),
            Err(e) => tower_diag(&format!("y0 = {y0}"), e, &mut diags)?,
        }
        out.diagnostics.extend(diags);
    }
    let mut diags = Vec::new();
    match pole_branches(h, order, &mut diags) {
        Ok(bs) => out.poles = bs,
        Err(e) => tower_diag("y0 = infinity", e, &mut diags)?,
    }
    out.diagnostics.extend(diags);
    Ok(out)
}

/// Truncations at `x = ∞` with exponents down to `-order`.
pub fn puiseux_solve_infinity(h: &P, order: &Q) -> Result<(Vec<PuiseuxTruncation>, Vec<Diagnostic>)> {
    let mut diags = Vec::new();
    if h.is_constant() {
        return Ok((vec![], diags));
    }
    let opts = LocalOptions {
        order: order.clone(),
        pole: false,
    };
    let eq = LocalEq::from_poly(&lift(h), ExpansionPoint::Infinity);
    let bs = match solve_local(&eq, &opts) {
        Ok(bs) => bs,
        Err(e) => {
            tower_diag("x = infinity", e, &mut diags)?;
            vec![]
        }
    };
    let out = bs
        .into_iter()
        .map(|b| {
            convert(
                b,
                ExpansionPoint::Infinity,
                InitialValue::Infinite,
                false,
                &qi(0),
                order,
                &mut diags,
            )
        })
        .collect();
    Ok((out, diags))
}

/// Solutions with `y(x₀) = y₀`, expanded in powers of `x - x₀`.
pub fn solve_at_point(h: &P, x0: &Q, y0: &Q, order: &Q) -> Result<Vec<PuiseuxTruncation>> {
    let mut diags = Vec::new();
    branches_at(h, &K::from_rational(y0), x0, order, &mut diags)
}

/// Branches at zero with `y(0) = y₀` for an algebraic `y₀`.
pub fn solve_at_value(h: &P, y0: &K, order: &Q) -> Result<Vec<PuiseuxTruncation>> {
    let mut diags = Vec::new();
    branches_at(h, y0, &qi(0), order, &mut diags)
}

/// Square-free reduced equation of `s` without univariate factors; `1` when
/// the system has only constant solutions.
pub fn reduced_star(s: &DiffSystem) -> Result<(Option<ReducedEquation>, P)> {
    let reduced = match reduce_system(s) {
        Ok(r) => Some(r),
        Err(AodeError::TrivialSystem) => None,
        Err(e) => return Err(e),
    };
    let h_star = match &reduced {
        Some(r) if !r.h.is_constant() => strip_univariate_factors(&squarefree_part(&r.h)).stripped,
        _ => P::one(),
    };
    Ok((reduced, h_star))
}

/// Truncations of solutions of `s` with `y(x₀) = y₀`, each checked against
/// `s` at the order used.
pub fn solve_system_at_point(
    s: &DiffSystem,
    x0: &Q,
    y0: &Q,
    order: Option<Q>,
) -> Result<(Q, Vec<(PuiseuxTruncation, Verification)>)> {
    let (_, h) = reduced_star(s)?;
    let order = order.unwrap_or_else(|| default_order(&h));
    if h.is_constant() {
        return Ok((order, vec![]));
    }
    let mut out = Vec::new();
    for t in solve_at_point(&h, x0, y0, &order)? {
        let v = verify_truncation(s, &t, &order)?;
        out.push((t, v));
    }
    Ok((order, out))
}

/// Everything `solve` reports for a system.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSolution {
    pub reduced: Option<ReducedEquation>,
    /// Square-free reduced equation with univariate factors removed.
    pub h_star: P,
    pub order: Q,
    pub local: LocalSolutions,
    pub infinity: Vec<PuiseuxTruncation>,
    pub linear: Vec<LinearSolution>,
    pub family_checks: Vec<Verification>,
    /// One entry per element of `local.truncations()` followed by `infinity`.
    pub truncation_checks: Vec<Verification>,
    pub linear_checks: Vec<Verification>,
}

impl SystemSolution {
    pub fn is_empty(&self) -> bool {
        self.local.families.is_empty()
            && self.local.truncations().next().is_none()
            && self.infinity.is_empty()
            && self.linear.is_empty()
    }

    pub fn all_verified(&self) -> bool {
        self.family_checks
            .iter()
            .chain(&self.truncation_checks)
            .chain(&self.linear_checks)
            .all(|v| v.ok)
    }
}

/// Reduce, solve the reduced equation, add linear solutions and verify
/// every member against the original system.
pub fn puiseux_solve_system(s: &DiffSystem, order: Option<Q>, at_infinity: bool) -> Result<SystemSolution> {
    let (reduced, h_star) = reduced_star(s)?;
    let order = order.unwrap_or_else(|| default_order(&h_star));
    let (local, infinity) = if at_infinity {
        let (t, d) = puiseux_solve_infinity(&h_star, &order)?;
        (
            LocalSolutions {
                diagnostics: d,
                ..Default::default()
            },
            t,
        )
    } else {
        (puiseux_solve(&h_star, &order)?, vec![])
    };
    let linear = if reduced.is_some() { linear_solutions(s) } else { vec![] };

    let family_checks = local
        .families
        .iter()
        .map(|f| {
            let series = if f.exact {
                TruncatedSeries::exact(ExpansionPoint::Zero, f.terms.clone())
            } else {
                TruncatedSeries::with_precision(ExpansionPoint::Zero, f.terms.clone(), &f.truncation_order + qi(1))
            };
            verify_series(s, &series)
        })
        .collect();
    let truncation_checks = local
        .truncations()
        .chain(&infinity)
        .map(|t| verify_truncation(s, t, &qi(0)))
        .collect::<Result<Vec<_>>>()?;
    let linear_checks = linear
        .iter()
        .map(|l| {
            let alpha = match l {
                LinearSolution::Slope(a) => a.clone(),
                LinearSolution::AnyLine => K::one(),
            };
            verify_series(s, &TruncatedSeries::exact(ExpansionPoint::Zero, [(qi(1), alpha)]))
        })
        .collect();
    Ok(SystemSolution {
        reduced,
        h_star,
        order,
        local,
        infinity,
        linear,
        family_checks,
        truncation_checks,
        linear_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_system_with;

    fn hyperbola() -> P {
        P::var(0).mul(&P::var(1)).sub(&P::one())
    }

    #[test]
    fn hyperbola_solutions() {
        let sol = puiseux_solve(&hyperbola(), &qi(3)).unwrap();
        assert_eq!(sol.families.len(), 1);
        assert_eq!(sol.critical.len(), 1);
        let shown: Vec<String> = sol.critical[0].1.iter().map(|t| t.display()).collect();
        assert_eq!(shown, vec!["y = -sqrt(2)*x^(1/2)", "y = sqrt(2)*x^(1/2)"]);
        assert!(sol.critical[0].1.iter().all(|t| t.unique_extension && t.exact));
        assert!(sol.poles.is_empty());
    }

    #[test]
    fn at_infinity() {
        let (t, _) = puiseux_solve_infinity(&hyperbola(), &qi(3)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].display_terms(), "sqrt(2)*x^(1/2)");
        assert!(!t[1].unique_extension);
        let (t, _) = puiseux_solve_infinity(&P::var(1).sub(&P::var(0)), &qi(3)).unwrap();
        assert!(t.is_empty());
        let (t, _) = puiseux_solve_infinity(&P::var(1).sub(&P::one()), &qi(3)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].display_terms(), "x");
        assert_eq!(t[0].free_exponents, vec![qi(0)]);
    }

    #[test]
    fn pole_branch_of_riccati() {
        // y' = -y^2: y = 1/(x + c), so 1/y = x at the pole.
        let h = P::var(1).add(&P::var(0).pow(2));
        let sol = puiseux_solve(&h, &qi(3)).unwrap();
        assert_eq!(sol.poles.len(), 1);
        assert_eq!(sol.poles[0].display(), "1/y = x");
    }

    #[test]
    fn example_system() {
        let s = parse_system_with("y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0", 16)
            .unwrap()
            .system;
        let sol = puiseux_solve_system(&s, Some(qi(3)), false).unwrap();
        assert!(sol.all_verified());
        assert!(sol.linear.is_empty());
        assert_eq!(sol.local.families[0].display(), "y = y0 + 1/y0*x - 1/(2*y0^3)*x^2 + 1/(2*y0^5)*x^3 + O(x^4)");
    }
}

//! Algebraic and rational solutions of the reduced equation.
//!
//! A candidate minimal polynomial `G(x, Y)` is reconstructed from one
//! regular branch of `H = 0` by linear algebra on its unknown coefficients,
//! then checked exactly by implicit differentiation. Non-constant solutions
//! of an autonomous irreducible `H` form one shift family, so a single
//! branch is enough to find `G` within the degree bounds.

use std::collections::BTreeSet;

use crate::arith::extension::AlgebraicNumber;
use crate::arith::field::{qi, Field, Q};
use crate::arith::linalg::nullspace;
use crate::arith::roots::{roots_over, univariate_roots};
use crate::arith::upoly::UPoly;
use crate::error::{AodeError, Result};
use crate::poly::{factor_bivariate, poly_gcd, MultiPoly, MultiRatFunc};
use crate::puiseux::family::exceptional_polynomials;
use crate::puiseux::{
    critical_values, linear_solutions, reduced_star, solve_at_point, solve_at_value, LinearSolution, PuiseuxTruncation,
};
use crate::series::{ExpansionPoint, TruncatedSeries};
use crate::system::DiffSystem;

type P = MultiPoly<Q>;
type K = AlgebraicNumber;

/// Extra series terms beyond the number of unknowns.
pub const GUARD: u32 = 5;

/// `(deg_x G, deg_Y G)` bounds for a minimal polynomial of a solution of `H`.
pub fn degree_bounds(h: &P) -> (u32, u32) {
    (h.degree_in(1), h.degree_in(0) + h.degree_in(1))
}

/// True iff every root function of `G(x, Y)` solves `H(y, y') = 0`: the
/// numerator of `H(Y, -G_x/G_Y)` vanishes modulo `G`.
pub fn verify_algebraic<F: Field>(g: &MultiPoly<F>, h: &MultiPoly<F>) -> bool {
    if g.degree_in(1) == 0 || h.is_zero() {
        return false;
    }
    let d = h.degree_in(1);
    let gx = g.derivative(0).neg();
    let gy = g.derivative(1);
    let mut n = MultiPoly::zero();
    for (j, hj) in h.coeffs_in(1).iter().enumerate() {
        let hy = hj.rename(|_| 1);
        n = n.add(&hy.mul(&gx.pow(j as u32)).mul(&gy.pow(d - j as u32)));
    }
    n.prem(g, 1).is_zero()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicSolutionFamily {
    /// `G(x, Y)` with `x` as variable 0 and `Y` as variable 1; the family is
    /// `G(x + c, Y)`.
    pub g: MultiPoly<K>,
    pub degree_x: u32,
    pub degree_y: u32,
    pub bounds: (u32, u32),
    pub source_factor: P,
    /// A branch at a critical value also lies on some `G(x + c, Y)`.
    pub cross_checked: bool,
    pub from_linear: bool,
}

fn xy_name(i: usize) -> String {
    ["x", "Y"][i].to_string()
}

fn shift_x<F: Field>(g: &MultiPoly<F>, by: &MultiPoly<F>) -> MultiPoly<F> {
    g.substitute(0, &MultiPoly::var(0).add(by))
}

impl AlgebraicSolutionFamily {
    pub fn display_g(&self) -> String {
        self.g.display_with(&xy_name)
    }

    /// `G(x + c, Y)` expanded.
    pub fn display_family(&self) -> String {
        // c is renamed to variable 0 so that it prints after x and Y.
        let g = self.g.rename(|i| i + 1);
        g.substitute(1, &MultiPoly::var(1).add(&MultiPoly::var(0)))
            .display_with(&|i| ["c", "x", "Y"][i].to_string())
    }

    pub fn within_bounds(&self) -> bool {
        self.degree_x <= self.bounds.0 && self.degree_y <= self.bounds.1
    }

    /// Exact check of `G(x + c, Y)` against the source factor.
    pub fn verify_shifted(&self, c: &Q) -> bool {
        let g = shift_x(&self.g, &MultiPoly::constant(K::from_rational(c)));
        verify_algebraic(&g, &self.source_factor.map(K::from_rational))
    }
}

fn x_series(c: &K) -> TruncatedSeries<K> {
    TruncatedSeries::exact(ExpansionPoint::Zero, [(qi(0), c.clone()), (qi(1), K::one())])
}

/// `G(x, y)` as a series, for series `x` and `y`.
fn eval_on_series(g: &MultiPoly<K>, x: &TruncatedSeries<K>, y: &TruncatedSeries<K>) -> TruncatedSeries<K> {
    let mut acc = TruncatedSeries::exact(ExpansionPoint::Zero, []);
    for (m, c) in g.terms() {
        acc = acc.add(&x.pow(m.exp(0)).mul(&y.pow(m.exp(1))).scale(c));
    }
    acc
}

fn sample_values() -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for d in 1..=3 {
        for n in 1..=6 {
            for v in [Q::new(n.into(), d.into()), Q::new((-n).into(), d.into())] {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// A regular branch at zero through a rational non-exceptional value,
/// preferring one with rational coefficients. Those are exactly the
/// branches whose slope `y'(0)` is rational, which is cheap to test.
fn reference_branch(h: &P, order: &Q) -> Result<Option<PuiseuxTruncation>> {
    let exceptional = exceptional_polynomials(h);
    let admissible: Vec<Q> = sample_values()
        .into_iter()
        .filter(|y0| exceptional.iter().all(|p| !p.eval(y0).is_zero()))
        .collect();
    let rational_slope = admissible.iter().find(|y0| {
        h.eval_var(0, y0)
            .to_upoly(1)
            .is_some_and(|u| univariate_roots(&u).iter().any(|r| r.value.as_rational().is_some()))
    });
    let Some(y0) = rational_slope.or(admissible.first()) else {
        return Ok(None);
    };
    let mut branches: Vec<PuiseuxTruncation> = solve_at_point(h, &qi(0), y0, order)?
        .into_iter()
        .filter(|b| !b.reciprocal && b.ramification == 1)
        .collect();
    let pick = branches
        .iter()
        .position(|b| b.terms.iter().all(|(_, c)| c.as_rational().is_some()))
        .unwrap_or(0);
    Ok((!branches.is_empty()).then(|| branches.swap_remove(pick)))
}

/// Basis of the `Σ g_ij x^i Y^j` with `i ≤ dx`, `j ≤ dy` vanishing on `y`
/// below `order`.
fn annihilators(y: &TruncatedSeries<K>, (dx, dy): (u32, u32), order: &Q) -> Vec<P> {
    let prec = y.kappa_precision().map_or(order.clone(), |p| p.min(order).clone());
    let x = x_series(&K::zero());
    let mut monos = Vec::new();
    let mut products = Vec::new();
    for i in 0..=dx {
        for j in 0..=dy {
            monos.push((i, j));
            products.push(x.pow(i).mul(&y.pow(j)));
        }
    }
    let exps: BTreeSet<Q> = products
        .iter()
        .flat_map(|p| p.terms().into_iter().map(|(e, _)| e))
        .filter(|e| *e < prec)
        .collect();
    let width = products
        .iter()
        .flat_map(|p| p.terms())
        .map(|(_, c)| c.coords().len())
        .max()
        .unwrap_or(1);
    let mut rows = Vec::new();
    for e in &exps {
        for t in 0..width {
            rows.push(
                products
                    .iter()
                    .map(|p| p.coeff(e).coords().get(t).cloned().unwrap_or_else(|| qi(0)))
                    .collect::<Vec<Q>>(),
            );
        }
    }
    nullspace(&rows, monos.len())
        .into_iter()
        .map(|v| {
            monos
                .iter()
                .zip(v)
                .fold(P::zero(), |acc, (&(i, j), c)| {
                    acc.add(&P::var(0).pow(i).mul(&P::var(1).pow(j)).scale(&c))
                })
        })
        .collect()
}

/// Irreducible factors involving `Y` of the common part of the basis, or of
/// each basis element when that is trivial.
fn candidates(basis: &[P]) -> Result<Vec<P>> {
    let g = basis.iter().fold(P::zero(), |acc, b| poly_gcd(&acc, b));
    let sources = if g.degree_in(1) > 0 { vec![g] } else { basis.to_vec() };
    let mut out: Vec<P> = Vec::new();
    for s in sources {
        if s.is_constant() {
            continue;
        }
        for (f, _) in factor_bivariate(&s)?.factors {
            let f = f.normalize();
            if f.degree_in(1) > 0 && !out.contains(&f) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// Shifts `x` so that `x^(dx-1)` has no part in the `Y`-coefficient that
/// carries `x^dx` with the highest power of `Y`.
fn normalize_shift(g: &P) -> P {
    let dx = g.degree_in(0);
    if dx == 0 {
        return g.normalize();
    }
    let cs = g.coeffs_in(1);
    let top = cs
        .iter()
        .rev()
        .find_map(|c| {
            let u = c.to_upoly(0).expect("coefficient in x");
            (u.deg() == dx as usize).then_some(u)
        })
        .expect("some coefficient has full x-degree");
    let lead = &top.coeffs()[dx as usize];
    let next = &top.coeffs()[dx as usize - 1];
    let c = -(next / (lead * qi(dx as i64)));
    shift_x(g, &P::constant(c)).normalize()
}

/// Looks for a branch at a critical value lying on `G(x + c, Y)`.
fn cross_check(h: &P, g: &MultiPoly<K>, order: &Q) -> Result<bool> {
    for v in critical_values(h) {
        let branches = match solve_at_value(h, &v, order) {
            Ok(b) => b,
            Err(AodeError::ExtensionTowerLimit(_)) => continue,
            Err(e) => return Err(e),
        };
        let Some(gv) = g.eval_var(1, &v).to_upoly(0) else {
            continue;
        };
        if gv.deg() == 0 {
            continue;
        }
        let Ok(shifts) = roots_over(&gv, v.modulus()) else {
            continue;
        };
        for b in branches.iter().filter(|b| !b.reciprocal && !b.terms.is_empty()) {
            let y = b.to_series();
            for root in &shifts {
                let c = &root.value;
                if !b.terms.iter().all(|(_, t)| t.compatible(c)) {
                    continue;
                }
                if eval_on_series(g, &x_series(c), &y).leading_kappa().is_none() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Minimal polynomial of the non-constant solutions of an irreducible `H`,
/// or `None` when they are not algebraic.
pub fn alg_sol(h: &P) -> Result<Option<AlgebraicSolutionFamily>> {
    if !(h.contains_var(0) && h.contains_var(1)) {
        return Ok(None);
    }
    let bounds = degree_bounds(h);
    let order = qi(((bounds.0 + 1) * (bounds.1 + 1) + GUARD) as i64);
    let Some(branch) = reference_branch(h, &order)? else {
        return Ok(None);
    };
    let y = branch.to_series();
    for f in candidates(&annihilators(&y, bounds, &order))? {
        let fk = f.map(K::from_rational);
        if eval_on_series(&fk, &x_series(&K::zero()), &y).leading_kappa().is_some() || !verify_algebraic(&f, h) {
            continue;
        }
        let g = normalize_shift(&f).map(K::from_rational);
        let cross_checked = cross_check(h, &g, &order)?;
        return Ok(Some(AlgebraicSolutionFamily {
            degree_x: g.degree_in(0),
            degree_y: g.degree_in(1),
            g,
            bounds,
            source_factor: h.clone(),
            cross_checked,
            from_linear: false,
        }));
    }
    Ok(None)
}

fn linear_family(alpha: &K) -> AlgebraicSolutionFamily {
    let source = match alpha.modulus() {
        Some(m) if alpha.as_rational().is_none() => P::from_upoly(&m.minpoly, 1),
        _ => P::var(1).sub(&P::constant(alpha.as_rational().expect("rational slope"))),
    };
    let g = MultiPoly::var(1).sub(&MultiPoly::var(0).scale(alpha));
    AlgebraicSolutionFamily {
        g,
        degree_x: 1,
        degree_y: 1,
        bounds: degree_bounds(&source),
        source_factor: source,
        cross_checked: false,
        from_linear: true,
    }
}

fn proportional(a: &MultiPoly<K>, b: &MultiPoly<K>) -> bool {
    a.scale(&b.leading_coeff()) == b.scale(&a.leading_coeff())
}

/// Every family of non-constant algebraic solutions of `s`.
pub fn alg_solution_system(s: &DiffSystem) -> Result<Vec<AlgebraicSolutionFamily>> {
    let (_, h_star) = reduced_star(s)?;
    let mut out = Vec::new();
    if !h_star.is_constant() {
        for (f, _) in factor_bivariate(&h_star)?.factors {
            if let Some(fam) = alg_sol(&f)? {
                out.push(fam);
            }
        }
    }
    for l in linear_solutions(s) {
        if let LinearSolution::Slope(a) = l {
            let fam = linear_family(&a);
            if !out.iter().any(|f: &AlgebraicSolutionFamily| proportional(&f.g, &fam.g)) {
                out.push(fam);
            }
        }
    }
    Ok(out)
}

/// `y = numerator / denominator` with `x` replaced by `x + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSolution {
    pub numerator: UPoly<K>,
    /// Monic.
    pub denominator: UPoly<K>,
    pub degree: u32,
    /// `deg_{y'}` of the equation the family solves.
    pub bound: u32,
    /// Exact substitution into every equation of the system gave zero.
    pub verified: bool,
}

fn rf_derivative(r: &MultiRatFunc<K>) -> MultiRatFunc<K> {
    let num = r.num.derivative(0).mul(&r.den).sub(&r.num.mul(&r.den.derivative(0)));
    MultiRatFunc::new(num, r.den.mul(&r.den))
}

/// Exact substitution of `y = num/den` into every equation.
pub fn solves_rationally(s: &DiffSystem, num: &UPoly<K>, den: &UPoly<K>) -> bool {
    let mut args = vec![MultiRatFunc::new(MultiPoly::from_upoly(num, 0), MultiPoly::from_upoly(den, 0))];
    for _ in 0..s.order {
        let d = rf_derivative(args.last().expect("non-empty"));
        args.push(d);
    }
    s.equations
        .iter()
        .all(|f| MultiRatFunc::eval_poly(&f.map(K::from_rational), &args).is_zero())
}

impl RationalSolution {
    pub fn display(&self) -> String {
        let show = |p: &UPoly<K>| {
            let m = MultiPoly::from_upoly(p, 1).substitute(1, &MultiPoly::var(1).add(&MultiPoly::var(0)));
            let s = m.display_with(&|i| if i == 0 { "c".into() } else { "x".into() });
            if m.num_terms() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.denominator.deg() == 0 {
            let s = show(&self.numerator);
            let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&s).to_string();
            format!("y = {s}")
        } else {
            format!("y = {}/{}", show(&self.numerator), show(&self.denominator))
        }
    }
}

/// Families of degree one in `Y`, solved for `Y`.
pub fn rational_solutions(s: &DiffSystem) -> Result<Vec<RationalSolution>> {
    let mut out = Vec::new();
    for f in alg_solution_system(s)? {
        if f.degree_y != 1 {
            continue;
        }
        let cs = f.g.coeffs_in(1);
        let g0 = cs[0].to_upoly(0).expect("coefficient in x");
        let g1 = cs[1].to_upoly(0).expect("coefficient in x");
        let lc = g1.lc().inverse();
        let numerator = g0.neg().scale(&lc);
        let denominator = g1.scale(&lc);
        let degree = numerator.deg().max(denominator.deg()) as u32;
        let bound = f.source_factor.degree_in(1);
        if degree > bound {
            return Err(AodeError::Internal(format!("rational solution of degree {degree} exceeds bound {bound}")));
        }
        let verified = solves_rationally(s, &numerator, &denominator);
        out.push(RationalSolution {
            numerator,
            denominator,
            degree,
            bound,
            verified,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_system_with;

    fn sys(t: &str) -> DiffSystem {
        parse_system_with(t, 16).unwrap().system
    }

    fn bi(t: &[(i64, &[u32])]) -> P {
        P::from_int_terms(t)
    }

    #[test]
    fn bounds() {
        assert_eq!(degree_bounds(&bi(&[(1, &[1, 1]), (-1, &[])])), (1, 2));
        assert_eq!(degree_bounds(&bi(&[(1, &[0, 1]), (-1, &[])])), (1, 1));
        assert_eq!(degree_bounds(&bi(&[(1, &[2, 3]), (1, &[1])])), (3, 5));
    }

    #[test]
    fn implicit_check() {
        let h = bi(&[(1, &[1, 1]), (-1, &[])]);
        assert!(verify_algebraic(&bi(&[(1, &[0, 2]), (-2, &[1]), (-1, &[])]), &h));
        assert!(!verify_algebraic(&bi(&[(1, &[0, 1]), (-1, &[2])]), &h));
        assert!(verify_algebraic(&bi(&[(1, &[0, 1]), (-1, &[1])]), &bi(&[(1, &[0, 1]), (-1, &[])])));
    }

    #[test]
    fn hyperbola_family() {
        let f = alg_sol(&bi(&[(1, &[1, 1]), (-1, &[])])).unwrap().unwrap();
        assert_eq!(f.display_g(), "Y^2 - 2*x");
        assert_eq!((f.degree_x, f.degree_y), (1, 2));
        assert!(f.cross_checked);
        assert_eq!(f.display_family(), "Y^2 - 2*x - 2*c");
        assert!(f.verify_shifted(&Q::new(3.into(), 7.into())));
    }

    #[test]
    fn exponential_has_none() {
        assert!(alg_sol(&bi(&[(1, &[0, 1]), (-1, &[1])])).unwrap().is_none());
    }

    #[test]
    fn square_law() {
        let f = alg_sol(&bi(&[(1, &[0, 2]), (-4, &[1])])).unwrap().unwrap();
        assert_eq!(f.display_g(), "Y - x^2");
    }

    #[test]
    fn riccati_rational() {
        let r = rational_solutions(&sys("y' + y^2 = 0; y'' - 2*y^3 = 0")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].display(), "y = 1/(x + c)");
        assert!(r[0].verified);
        let r = rational_solutions(&sys("y' = 1")).unwrap();
        assert_eq!(r[0].display(), "y = x + c");
    }
}

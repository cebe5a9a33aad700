//! Solutions through a generic initial value `y₀`.
//!
//! Near a point where `H(y₀, c) = 0` with non-vanishing separant the
//! solution is a power series whose coefficients follow from implicit
//! differentiation of `H(y, y') = 0`. The coefficients live in
//! `K = ℚ(y₀)[c]/(h(y₀, c))` for an irreducible factor `h` of `H`.

use std::sync::Arc;

use crate::arith::extension::{Extension, Modulus, RootSelector};
use crate::arith::field::{qi, Field, Q};
use crate::arith::ratfunc::RatFunc;
use crate::arith::roots::univariate_roots;
use crate::arith::upoly::UPoly;
use crate::arith::zassenhaus::factor_rational;
use crate::arith::AlgebraicNumber;
use crate::poly::{resultant, MultiPoly};
use crate::series::ExpansionPoint;

use super::{format_terms, InitialValue, PuiseuxTruncation};

type P = MultiPoly<Q>;
pub type FamilyCoeff = Extension<RatFunc>;

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    /// Irreducible `h(y₀, c)`, with `u₀ = y₀` and `u₁ = c = y'(0)`.
    pub relation: P,
    /// Polynomials in `y₀` that must not vanish.
    pub constraints: Vec<UPoly<Q>>,
    /// `(k, coefficient of x^k)` for `k = 0 … order`.
    pub terms: Vec<(Q, FamilyCoeff)>,
    pub truncation_order: Q,
    pub exact: bool,
}

fn field_of(h: &P) -> Arc<Modulus<RatFunc>> {
    let coeffs = h
        .coeffs_in(1)
        .iter()
        .map(|c| RatFunc::from_poly(c.to_upoly(0).expect("bivariate relation")))
        .collect();
    Arc::new(Modulus {
        minpoly: UPoly::new(coeffs),
        selector: RootSelector::Formal,
        interval: None,
    })
}

fn to_k(p: &P, m: &Arc<Modulus<RatFunc>>) -> FamilyCoeff {
    let coeffs: Vec<RatFunc> = p
        .coeffs_in(1)
        .iter()
        .map(|c| RatFunc::from_poly(c.to_upoly(0).expect("bivariate polynomial")))
        .collect();
    Extension::from_poly(&UPoly::new(coeffs), Some(m.clone()))
}

/// The derivation with `D(y₀) = c` and `D(c) = -h_{u₀}·c / h_{u₁}`.
struct Derivation {
    modulus: Arc<Modulus<RatFunc>>,
    dc: FamilyCoeff,
}

impl Derivation {
    fn new(h: &P) -> Self {
        let modulus = field_of(h);
        let c = to_k(&P::var(1), &modulus);
        let dc = to_k(&h.derivative(0), &modulus)
            .times(&c)
            .negated()
            .over(&to_k(&h.derivative(1), &modulus));
        Derivation { modulus, dc }
    }

    fn apply(&self, e: &FamilyCoeff) -> FamilyCoeff {
        let coords = e.coords();
        let mut shifted = vec![RatFunc::zero(); coords.len() + 1];
        let mut lowered = vec![RatFunc::zero(); coords.len().max(1)];
        for (k, p) in coords.iter().enumerate() {
            shifted[k + 1] = p.derivative();
            if k > 0 {
                lowered[k - 1] = p.times(&RatFunc::from_int(k as i64));
            }
        }
        let m = Some(self.modulus.clone());
        Extension::from_poly(&UPoly::new(shifted), m.clone())
            .plus(&Extension::from_poly(&UPoly::new(lowered), m).times(&self.dc))
    }
}

/// Irreducible factors of `lc_{u₁}(H)`, `Res_{u₁}(H, H_{u₁})` and `H(u₀, 0)`.
pub fn exceptional_polynomials(h: &P) -> Vec<UPoly<Q>> {
    let mut polys = vec![h.lc_in(1), resultant(h, &h.derivative(1), 1), h.eval_var(1, &qi(0))];
    polys.retain(|p| !p.is_zero());
    let mut out: Vec<UPoly<Q>> = Vec::new();
    for p in polys {
        let u = p.to_upoly(0).expect("polynomial in u0");
        for (f, _) in factor_rational(&u).1 {
            if f.deg() > 0 && !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())));
    out
}

/// Family of solutions on the component `h` of `H`, to order `order`.
pub fn family(h: &P, whole: &P, order: u32) -> SolutionFamily {
    let d = Derivation::new(h);
    let y0 = Extension::from_base(RatFunc::param());
    let mut terms = vec![(qi(0), y0)];
    let mut cur = Extension::generator(d.modulus.clone());
    let mut fact = qi(1);
    let mut exact = false;
    for k in 1..=order {
        if cur.is_zero() {
            exact = true;
            break;
        }
        fact *= qi(k as i64);
        terms.push((qi(k as i64), cur.times(&FamilyCoeff::from_rational(&fact.recip()))));
        cur = d.apply(&cur);
    }
    exact |= cur.is_zero();
    terms.retain(|(_, c)| !c.is_zero());
    SolutionFamily {
        relation: h.clone(),
        constraints: exceptional_polynomials(whole),
        terms,
        truncation_order: qi(order as i64),
        exact,
    }
}

impl SolutionFamily {
    pub fn display(&self) -> String {
        let tail = if self.exact {
            String::new()
        } else {
            format!(" + O(x^{})", &self.truncation_order + qi(1))
        };
        format!("y = {}{tail}", format_terms(&self.terms, "x"))
    }

    /// `c` is named only when the relation is not linear in it.
    pub fn slope_relation(&self) -> Option<String> {
        (self.relation.degree_in(1) > 1).then(|| {
            self.relation
                .display_with(&|i| if i == 0 { "y0".into() } else { "c".into() })
        })
    }

    pub fn display_constraints(&self) -> Vec<String> {
        self.constraints
            .iter()
            .map(|p| format!("{} != 0", p.display_with("y0")))
            .collect()
    }

    pub fn admissible(&self, y0: &Q) -> bool {
        self.constraints.iter().all(|p| !p.eval(y0).is_zero())
    }
}

/// Specializes the family at a rational admissible `y₀`, one truncation per
/// root `c` of `h(y₀, c)`.
pub fn specialize(f: &SolutionFamily, y0: &Q) -> Option<Vec<PuiseuxTruncation>> {
    if !f.admissible(y0) {
        return None;
    }
    let slope = f.relation.eval_var(0, y0).to_upoly(1)?;
    let mut out = Vec::new();
    for root in univariate_roots(&slope) {
        let c = root.value;
        let mut terms = Vec::new();
        for (e, coef) in &f.terms {
            let mut v = AlgebraicNumber::zero();
            for (j, r) in coef.coords().iter().enumerate() {
                v = v.plus(&AlgebraicNumber::from_rational(&r.eval(y0)?).times(&c.pow(j as u32)));
            }
            if !v.is_zero() {
                terms.push((e.clone(), v));
            }
        }
        out.push(PuiseuxTruncation {
            point: ExpansionPoint::Zero,
            center: qi(0),
            initial: InitialValue::Finite(AlgebraicNumber::from_rational(y0)),
            reciprocal: false,
            terms,
            ramification: 1,
            truncation_order: f.truncation_order.clone(),
            precision: (!f.exact).then(|| &f.truncation_order + qi(1)),
            unique_extension: true,
            exact: f.exact,
            free_exponents: vec![],
            certificate: None,
        });
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbola_family() {
        let h = P::var(0).mul(&P::var(1)).sub(&P::one());
        let f = family(&h, &h, 3);
        assert_eq!(f.terms.len(), 4);
        let y = RatFunc::param();
        let expect = [
            y.clone(),
            y.inverse(),
            y.pow(3).times(&RatFunc::from_int(2)).inverse().negated(),
            y.pow(5).times(&RatFunc::from_int(2)).inverse(),
        ];
        for ((_, c), e) in f.terms.iter().zip(&expect) {
            assert_eq!(c.as_base().as_ref(), Some(e));
        }
        assert_eq!(f.display_constraints(), vec!["y0 != 0"]);
        let s = specialize(&f, &qi(1)).unwrap();
        let coeffs: Vec<String> = s[0].terms.iter().map(|(_, c)| c.to_string()).collect();
        assert_eq!(coeffs, vec!["1", "1", "-1/2", "1/2"]);
        assert!(specialize(&f, &qi(0)).is_none());
    }

    #[test]
    fn linear_flow_is_exact() {
        let h = P::var(1).sub(&P::one());
        let f = family(&h, &h, 5);
        assert!(f.exact);
        assert_eq!(f.terms.len(), 2);
    }
}

//! Simple algebraic extensions `F(α) = F[t]/(m(t))`.
//!
//! With `F = ℚ` this is a number field; `AlgebraicNumber` is the element type
//! used throughout the solver. With `F = ℚ(y₀)` it is the function field that
//! carries the coefficients of generic solution families.
//!
//! Elements with no attached modulus live in the base field and mix freely with
//! elements of any extension. Mixing two different non-trivial extensions is an
//! invariant violation and panics; callers raise `ExtensionTowerLimit` before
//! that can happen.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::field::{Field, Q};
use super::upoly::UPoly;

/// Identifies which root of the minimal polynomial `α` denotes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootSelector {
    /// `index`-th real root in increasing order, isolated in `[lo, hi]`.
    Real { index: usize, lo: String, hi: String },
    /// `index`-th non-real root; conjugates are distinguished only by label.
    Complex { index: usize },
    /// A formal root (function fields).
    Formal,
}

/// The modulus of an extension together with the root it denotes.
#[derive(Clone, Debug, PartialEq)]
pub struct Modulus<F: Field> {
    pub minpoly: UPoly<F>,
    pub selector: RootSelector,
    /// Rational isolating interval for real roots over ℚ.
    pub interval: Option<(Q, Q)>,
}

pub type NumberField = Modulus<Q>;

/// An element of `F(α)`, stored as coordinates in the power basis.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    coords: Vec<F>,
    modulus: Option<Arc<Modulus<F>>>,
}

/// Element of a number field `ℚ(α)` (or of ℚ itself).
pub type AlgebraicNumber = Extension<Q>;

impl<F: Field> Modulus<F> {
    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }
}

impl<F: Field> Extension<F> {
    pub fn from_base(c: F) -> Self {
        Extension {
            coords: if c.is_zero() { vec![] } else { vec![c] },
            modulus: None,
        }
    }

    /// The generator `α` of the field described by `modulus`.
    pub fn generator(modulus: Arc<Modulus<F>>) -> Self {
        Self::from_poly(&UPoly::x(), Some(modulus))
    }

    /// Reduces `p(α)` modulo the minimal polynomial.
    pub fn from_poly(p: &UPoly<F>, modulus: Option<Arc<Modulus<F>>>) -> Self {
        match modulus {
            None => {
                assert!(p.is_constant(), "non-constant polynomial without modulus");
                Self::from_base(p.coeff(0))
            }
            Some(m) => {
                if m.degree() == 1 {
                    // α is the base-field root of a linear polynomial.
                    let root = m.minpoly.coeff(0).negated().over(&m.minpoly.coeff(1));
                    return Self::from_base(p.eval(&root));
                }
                let r = p.rem(&m.minpoly);
                Extension {
                    coords: r.coeffs().to_vec(),
                    modulus: Some(m),
                }
                .trimmed()
            }
        }
    }

    fn trimmed(mut self) -> Self {
        while self.coords.last().is_some_and(|c| c.is_zero()) {
            self.coords.pop();
        }
        if self.coords.len() <= 1 {
            self.modulus = None;
        }
        self
    }

    pub fn modulus(&self) -> Option<&Arc<Modulus<F>>> {
        self.modulus.as_ref()
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// The element as a polynomial in `α`.
    pub fn as_poly(&self) -> UPoly<F> {
        UPoly::new(self.coords.clone())
    }

    /// `Some(c)` when the element lies in the base field.
    pub fn as_base(&self) -> Option<F> {
        match self.coords.len() {
            0 => Some(F::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }

    fn common_modulus(&self, o: &Self) -> Option<Arc<Modulus<F>>> {
        match (&self.modulus, &o.modulus) {
            (None, None) => None,
            (Some(m), None) | (None, Some(m)) => Some(m.clone()),
            (Some(a), Some(b)) => {
                assert!(
                    Arc::ptr_eq(a, b) || **a == **b,
                    "arithmetic between different algebraic extensions"
                );
                Some(a.clone())
            }
        }
    }

    /// True when both elements can be combined without a field tower.
    pub fn compatible(&self, o: &Self) -> bool {
        match (&self.modulus, &o.modulus) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => true,
        }
    }
}

impl<F: Field> PartialEq for Extension<F> {
    fn eq(&self, o: &Self) -> bool {
        if self.coords != o.coords {
            return false;
        }
        match (&self.modulus, &o.modulus) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => true,
        }
    }
}

/// Base fields that know how to name the generator of their extensions.
pub trait BaseField: Field {
    fn generator_symbol(m: &Modulus<Self>) -> String;
}

impl BaseField for Q {
    fn generator_symbol(m: &Modulus<Self>) -> String {
        m.symbol()
    }
}

impl BaseField for super::ratfunc::RatFunc {
    fn generator_symbol(_: &Modulus<Self>) -> String {
        "c".to_string()
    }
}

impl<F: BaseField> Field for Extension<F> {
    fn zero() -> Self {
        Self::from_base(F::zero())
    }
    fn one() -> Self {
        Self::from_base(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let m = self.common_modulus(o);
        let n = self.coords.len().max(o.coords.len());
        let get = |v: &Vec<F>, i: usize| v.get(i).cloned().unwrap_or_else(F::zero);
        Extension {
            coords: (0..n).map(|i| get(&self.coords, i).plus(&get(&o.coords, i))).collect(),
            modulus: m,
        }
        .trimmed()
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let m = self.common_modulus(o);
        let p = self.as_poly().mul(&o.as_poly());
        match m {
            None => Self::from_base(p.coeff(0)),
            Some(m) => Self::from_poly(&p, Some(m)),
        }
    }
    fn negated(&self) -> Self {
        Extension {
            coords: self.coords.iter().map(|c| c.negated()).collect(),
            modulus: self.modulus.clone(),
        }
    }
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero algebraic element");
        match &self.modulus {
            None => Self::from_base(self.coords[0].inverse()),
            Some(m) => {
                let (g, s, _) = self.as_poly().ext_gcd(&m.minpoly);
                assert!(g.is_constant(), "minimal polynomial is reducible");
                Self::from_poly(&s, Some(m.clone()))
            }
        }
    }
    fn from_rational(value: &Q) -> Self {
        Self::from_base(F::from_rational(value))
    }
    fn as_rational(&self) -> Option<Q> {
        self.as_base().and_then(|c| c.as_rational())
    }

    /// Base-field normalization when every coefficient lies in the base field,
    /// otherwise monic.
    fn normalizer(coeffs: &[&Self]) -> Self {
        let base: Option<Vec<F>> = coeffs.iter().map(|c| c.as_base()).collect();
        match base {
            Some(b) => {
                let refs: Vec<&F> = b.iter().collect();
                Self::from_base(F::normalizer(&refs))
            }
            None => coeffs[0].inverse(),
        }
    }
}

impl Modulus<Q> {
    /// Rendering of `α` used in human-readable output.
    pub fn symbol(&self) -> String {
        let m = &self.minpoly;
        if m.deg() == 2 && m.coeff(1) == Q::from_integer(0.into()) {
            let d = -m.coeff(0);
            let root = format!("sqrt({d})");
            match &self.selector {
                RootSelector::Real { index: 0, .. } => return format!("-{root}"),
                RootSelector::Real { .. } => return root,
                RootSelector::Complex { index } => {
                    return if *index == 0 {
                        format!("-{root}")
                    } else {
                        root
                    }
                }
                RootSelector::Formal => {}
            }
        }
        match &self.selector {
            RootSelector::Real { lo, hi, .. } => format!("RootOf({}, [{lo}, {hi}])", m.display_with("t")),
            RootSelector::Complex { index } => format!("RootOf({}, #{index})", m.display_with("t")),
            RootSelector::Formal => format!("RootOf({})", m.display_with("t")),
        }
    }
}

fn render<F: Field>(e: &Extension<F>, alpha: &str) -> String {
    let p = e.as_poly();
    if p.is_constant() {
        return p.coeff(0).to_string();
    }
    p.display_with(alpha)
}

impl<F: BaseField> fmt::Display for Extension<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "{}", self.as_base().unwrap()),
            Some(m) => {
                let sym = F::generator_symbol(m);
                if let Some(pos) = sym.strip_prefix('-') {
                    // α = -β with β printable: rewrite a + bα as a - bβ.
                    let mut flipped = self.clone();
                    for (k, c) in flipped.coords.iter_mut().enumerate() {
                        if k % 2 == 1 {
                            *c = c.negated();
                        }
                    }
                    return f.write_str(&render(&flipped, pos));
                }
                let alpha = if sym.contains(' ') { format!("({sym})") } else { sym };
                f.write_str(&render(self, &alpha))
            }
        }
    }
}

impl Extension<Q> {
    /// Structured form `{minpoly, interval|index, coords}` for machine output.
    pub fn to_json(&self) -> serde_json::Value {
        match &self.modulus {
            None => serde_json::json!(self.as_base().unwrap().to_string()),
            Some(m) => serde_json::json!({
                "minpoly": m.minpoly.display_with("t"),
                "root": m.selector,
                "coords": self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;

    fn sqrt2() -> AlgebraicNumber {
        let m = Arc::new(Modulus {
            minpoly: UPoly::from_ints(&[-2, 0, 1]),
            selector: RootSelector::Real {
                index: 1,
                lo: "1".into(),
                hi: "2".into(),
            },
            interval: Some((qi(1), qi(2))),
        });
        Extension::generator(m)
    }

    #[test]
    fn sqrt2_arithmetic() {
        let a = sqrt2();
        assert_eq!(a.times(&a), AlgebraicNumber::from_int(2));
        let inv = a.inverse();
        assert_eq!(inv.times(&a), AlgebraicNumber::one());
        assert_eq!(a.to_string(), "sqrt(2)");
        assert_eq!(a.negated().to_string(), "-sqrt(2)");
        let half = a.over(&AlgebraicNumber::from_int(2));
        assert_eq!(half.to_string(), "1/2*sqrt(2)");
    }

    #[test]
    fn base_elements_mix_with_extension() {
        let a = sqrt2();
        let one = AlgebraicNumber::one();
        let s = a.plus(&one);
        assert_eq!(s.minus(&a), one);
        assert!(s.minus(&a).modulus().is_none());
    }
}

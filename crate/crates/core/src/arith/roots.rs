//! Roots of univariate polynomials as exact algebraic numbers.

use std::sync::Arc;

use num_traits::Signed;

use super::extension::{AlgebraicNumber, Extension, Modulus, RootSelector};
use super::field::{qi, Field, Q};
use super::upoly::UPoly;
use super::zassenhaus::factor_rational;
use crate::error::{AodeError, Result};

/// A root together with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: AlgebraicNumber,
    pub multiplicity: u32,
}

/// Resultant of two univariate polynomials over a field (Euclidean scheme).
pub fn resultant<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> F {
    if a.is_zero() || b.is_zero() {
        return F::zero();
    }
    let (da, db) = (a.deg(), b.deg());
    if db == 0 {
        return b.lc().pow(da as u32);
    }
    if da == 0 {
        return a.lc().pow(db as u32);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return F::zero();
    }
    let sign = if da * db % 2 == 1 { F::one().negated() } else { F::one() };
    let scale = b.lc().pow((da - r.deg()) as u32);
    sign.times(&scale).times(&resultant(b, &r))
}

fn sturm_sequence(p: &UPoly<Q>) -> Vec<UPoly<Q>> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_changes(seq: &[UPoly<Q>], x: &Q) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Isolating intervals `(lo, hi]` for the real roots of a square-free
/// polynomial without rational roots, in increasing order.
pub fn isolate_real_roots(p: &UPoly<Q>) -> Vec<(Q, Q)> {
    let seq = sturm_sequence(p);
    let lc = p.lc().abs();
    let bound = p.coeffs().iter().map(|c| c.abs() / &lc).fold(qi(0), |a, b| a.max(b)) + qi(1);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo <= qi(1) {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / qi(2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort();
    out
}

/// All roots of `f` over the algebraic closure, one field per irreducible
/// factor root: rational roots in increasing order, then per factor the
/// real roots in increasing order followed by the non-real ones.
pub fn univariate_roots(f: &UPoly<Q>) -> Vec<Root> {
    let (_, factors) = factor_rational(f);
    let mut rational: Vec<(Q, u32)> = factors
        .iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, m)| (g.coeff(0).negated().over(&g.coeff(1)), *m))
        .collect();
    rational.sort();
    let mut out: Vec<Root> = rational
        .into_iter()
        .map(|(r, multiplicity)| Root {
            value: AlgebraicNumber::from_base(r),
            multiplicity,
        })
        .collect();
    for (g, mult) in factors {
        if g.deg() == 1 {
            continue;
        }
        let minpoly = g.monic();
        let real = isolate_real_roots(&minpoly);
        let n_real = real.len();
        for (index, (lo, hi)) in real.into_iter().enumerate() {
            let m = Modulus {
                minpoly: minpoly.clone(),
                selector: RootSelector::Real {
                    index,
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                },
                interval: Some((lo, hi)),
            };
            out.push(Root {
                value: Extension::generator(Arc::new(m)),
                multiplicity: mult,
            });
        }
        for index in 0..minpoly.deg() - n_real {
            let m = Modulus {
                minpoly: minpoly.clone(),
                selector: RootSelector::Complex { index },
                interval: None,
            };
            out.push(Root {
                value: Extension::generator(Arc::new(m)),
                multiplicity: mult,
            });
        }
    }
    out
}

/// Norm `Res_s(m(s), f(s, t))` of a polynomial over `ℚ(α)`, by evaluation
/// and interpolation in `t`.
fn norm(f: &UPoly<AlgebraicNumber>, m: &Modulus<Q>) -> UPoly<Q> {
    let deg = f.deg() * m.degree();
    let lift = |c: &AlgebraicNumber| c.as_poly();
    let points: Vec<Q> = (0..=deg as i64).map(qi).collect();
    let values: Vec<Q> = points
        .iter()
        .map(|t| {
            // f(s, t) as a polynomial in s.
            let mut acc = UPoly::<Q>::zero();
            for c in f.coeffs().iter().rev() {
                acc = acc.scale(t).add(&lift(c));
            }
            resultant(&m.minpoly, &acc)
        })
        .collect();
    interpolate(&points, &values)
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UPoly<F> {
    let mut out = UPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = UPoly::new(vec![xj.negated(), F::one()]);
                basis = basis.mul(&lin).scale(&xi.minus(xj).inverse());
            }
        }
        out = out.add(&basis);
    }
    out
}

/// Roots of `f` over `K = ℚ(α)`, where `α` is given by `modulus`, or over
/// the algebraic closure when `modulus` is `None`. Roots that would need a
/// second extension on top of `K` raise `ExtensionTowerLimit`.
pub fn roots_over(f: &UPoly<AlgebraicNumber>, modulus: Option<&Arc<Modulus<Q>>>) -> Result<Vec<Root>> {
    let rational: Option<Vec<Q>> = f.coeffs().iter().map(|c| c.as_base()).collect();
    let m = match (modulus, rational) {
        (None, Some(cs)) => return Ok(univariate_roots(&UPoly::new(cs))),
        (None, None) => {
            // Coefficients carry their own field.
            let m = f
                .coeffs()
                .iter()
                .find_map(|c| c.modulus().cloned())
                .expect("non-rational coefficient has a modulus");
            return roots_over(f, Some(&m));
        }
        (Some(m), _) => m.clone(),
    };
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_over_field(&part, &m) {
            if g.deg() == 1 {
                let r = g.coeff(0).negated().over(&g.coeff(1));
                out.push(Root {
                    value: r,
                    multiplicity: mult,
                });
            } else {
                return Err(AodeError::ExtensionTowerLimit(format!(
                    "factor of degree {} over {}",
                    g.deg(),
                    m.minpoly.display_with("t")
                )));
            }
        }
    }
    Ok(out)
}

/// Irreducible factors of a square-free polynomial over `ℚ(α)` (Trager).
pub fn factor_over_field(f: &UPoly<AlgebraicNumber>, m: &Arc<Modulus<Q>>) -> Vec<UPoly<AlgebraicNumber>> {
    if f.deg() <= 1 {
        return vec![f.monic()];
    }
    let alpha = Extension::generator(m.clone());
    for k in 0..20i64 {
        // g(t) = f(t - kα), whose norm is square-free for all but finitely many k.
        let shift = alpha.times(&AlgebraicNumber::from_int(-k));
        let g = f.shift(&shift);
        let n = norm(&g, m);
        if n.gcd(&n.derivative()).deg() > 0 {
            continue;
        }
        let (_, factors) = factor_rational(&n);
        let mut out = Vec::new();
        for (h, _) in factors {
            let hk = h.map(|c| AlgebraicNumber::from_base(c.clone()));
            let d = g.gcd(&hk);
            if d.deg() > 0 {
                out.push(d.shift(&shift.negated()).monic());
            }
        }
        return out;
    }
    vec![f.monic()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_roots() {
        let roots = univariate_roots(&UPoly::from_ints(&[-2, 0, 1]));
        let names: Vec<String> = roots.iter().map(|r| r.value.to_string()).collect();
        assert_eq!(names, vec!["-sqrt(2)", "sqrt(2)"]);
        for r in &roots {
            assert_eq!(r.value.times(&r.value), AlgebraicNumber::from_int(2));
        }
    }

    #[test]
    fn multiplicities() {
        // c^2 (c - 3)
        let roots = univariate_roots(&UPoly::from_ints(&[0, 0, -3, 1]));
        let got: Vec<(String, u32)> = roots.iter().map(|r| (r.value.to_string(), r.multiplicity)).collect();
        assert_eq!(got, vec![("0".to_string(), 2), ("3".to_string(), 1)]);
    }

    #[test]
    fn roots_inside_number_field() {
        let roots = univariate_roots(&UPoly::from_ints(&[-2, 0, 1]));
        let s = roots[1].value.clone();
        let m = s.modulus().unwrap().clone();
        // t^2 - 8 = (t - 2√2)(t + 2√2) over ℚ(√2).
        let f = UPoly::from_ints(&[-8, 0, 1]).map(|c| AlgebraicNumber::from_base(c.clone()));
        let rs = roots_over(&f, Some(&m)).unwrap();
        assert_eq!(rs.len(), 2);
        for r in rs {
            assert_eq!(r.value.times(&r.value), AlgebraicNumber::from_int(8));
        }
        let g = UPoly::from_ints(&[-3, 0, 1]).map(|c| AlgebraicNumber::from_base(c.clone()));
        assert!(matches!(roots_over(&g, Some(&m)), Err(AodeError::ExtensionTowerLimit(_))));
    }

    #[test]
    fn resultant_matches_product_of_differences() {
        let a = UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[-2, 1]));
        let b = UPoly::from_ints(&[-3, 1]);
        // (3-1)(3-2)
        assert_eq!(resultant(&a, &b), qi(2));
    }
}

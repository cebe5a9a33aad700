mod common;

use aode::arith::extension::AlgebraicNumber;
use aode::arith::field::{qi, Field, Q};
use aode::puiseux::{puiseux_solve_system, reduced_star, solve_at_point, specialize};
use aode::series::{ExpansionPoint, TruncatedSeries};
use aode::verify::verify_series;
use common::*;

type K = AlgebraicNumber;

#[test]
fn family_agrees_with_direct_expansion() {
    let s = system(EXAMPLE);
    let sol = puiseux_solve_system(&s, Some(qi(3)), false).unwrap();
    let fam = &sol.local.families[0];
    let (_, h) = reduced_star(&s).unwrap();
    for y0 in [qi(1), qi(-2), Q::new(1.into(), 3.into()), Q::new((-5).into(), 2.into()), qi(7)] {
        let mut from_family: Vec<_> = specialize(fam, &y0).unwrap().into_iter().map(|t| t.terms).collect();
        let mut direct: Vec<_> = solve_at_point(&h, &qi(0), &y0, &qi(3))
            .unwrap()
            .into_iter()
            .map(|t| t.terms)
            .collect();
        from_family.sort_by_key(|t| format!("{t:?}"));
        direct.sort_by_key(|t| format!("{t:?}"));
        assert_eq!(from_family, direct, "y0 = {y0}");
    }
}

/// `Σ c_k (x + 1)^k` for a polynomial truncation.
fn shifted_by_one(terms: &[(Q, K)]) -> TruncatedSeries<K> {
    let x1 = TruncatedSeries::exact(ExpansionPoint::Zero, [(qi(0), K::one()), (qi(1), K::one())]);
    let mut acc = TruncatedSeries::exact(ExpansionPoint::Zero, []);
    for (e, c) in terms {
        let k = e.to_integer().try_into().expect("small exponent");
        acc = acc.add(&x1.pow(k).scale(c));
    }
    acc
}

#[test]
fn exact_polynomial_solutions_survive_shifts() {
    let mut seen = 0;
    for text in corpus() {
        let s = system(&text);
        let sol = puiseux_solve_system(&s, None, false).unwrap();
        for t in sol.local.truncations() {
            let polynomial = t.terms.iter().all(|(e, _)| e.is_integer() && *e >= qi(0));
            if !t.exact || t.reciprocal || !polynomial {
                continue;
            }
            seen += 1;
            assert!(verify_series(&s, &shifted_by_one(&t.terms)).ok, "{text}: {}", t.display());
        }
    }
    assert!(seen > 0);
}

#[test]
fn linear_solutions_verify() {
    let s = system("y'^2 - 4 = 0");
    let sol = puiseux_solve_system(&s, None, false).unwrap();
    assert!(!sol.linear.is_empty());
    assert!(sol.linear_checks.iter().all(|v| v.ok));
}

#[test]
fn pole_branches_at_riccati() {
    let s = system("y' - y^2 = 0");
    let sol = puiseux_solve_system(&s, None, false).unwrap();
    assert!(sol.local.poles.iter().all(|t| t.reciprocal));
    assert!(!sol.local.poles.is_empty());
    assert!(sol.all_verified());
}

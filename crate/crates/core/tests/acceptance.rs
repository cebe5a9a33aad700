//! Acceptance checks, one line per criterion. Run with
//! `cargo test --test acceptance`.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use aode::algebraic::{alg_solution_system, rational_solutions, verify_algebraic};
use aode::arith::extension::AlgebraicNumber;
use aode::arith::field::{qi, Field, Q};
use aode::arith::ratfunc::RatFunc;
use aode::parse::{parse_system_with, print_system};
use aode::poly::{resultant, Mono, MultiPoly};
use aode::puiseux::{puiseux_solve_system, solve_system_at_point, InitialValue, PuiseuxTruncation};
use aode::reduction::reduce_system;
use aode::verify::verify_truncation;
use aode::{AodeError, DiffSystem};
use common::*;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type K = AlgebraicNumber;
type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    ensure(elapsed < limit, || format!("took {:.2}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()))
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_aode")).args(args).output().expect("binary runs")
}

fn c1() -> Outcome {
    let start = Instant::now();
    let r = reduce_system(&system(EXAMPLE)).map_err(|e| e.to_string())?;
    ensure(r.h.normalize().display_y() == "y*y' - 1", || format!("H = {}", r.h.display_y()))?;
    let mut gcds: Vec<String> = r.per_chain.iter().map(|c| c.h.normalize().display_y()).collect();
    gcds.sort();
    ensure(gcds == ["1", "y*y' - 1"], || format!("per-chain gcds {gcds:?}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    let out = binary(&["reduce", EXAMPLE]);
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success() && text.contains("H = y*y' - 1"), || format!("binary printed {text}"))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let sol = puiseux_solve_system(&system(EXAMPLE), Some(qi(3)), false).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(5))?;
    let [fam] = sol.local.families.as_slice() else {
        return Err(format!("{} families", sol.local.families.len()));
    };
    let y = RatFunc::param();
    let two = RatFunc::from_int(2);
    let expect = [
        (qi(0), y.clone()),
        (qi(1), y.inverse()),
        (qi(2), y.pow(3).times(&two).inverse().negated()),
        (qi(3), y.pow(5).times(&two).inverse()),
    ];
    let got: Vec<(Q, Option<RatFunc>)> = fam.terms.iter().map(|(e, c)| (e.clone(), c.as_base())).collect();
    let want: Vec<(Q, Option<RatFunc>)> = expect.into_iter().map(|(e, c)| (e, Some(c))).collect();
    ensure(got == want, || format!("family {}", fam.display()))?;
    ensure(fam.display_constraints() == ["y0 != 0"], || format!("constraints {:?}", fam.display_constraints()))?;

    let at_zero: Vec<&PuiseuxTruncation> = sol
        .local
        .critical
        .iter()
        .filter(|(v, _)| v.is_zero())
        .flat_map(|(_, b)| b)
        .collect();
    ensure(at_zero.len() == 2, || format!("{} branches at y(0) = 0", at_zero.len()))?;
    let two_k = K::from_rational(&qi(2));
    let mut signs = Vec::new();
    for t in &at_zero {
        let [(e, c)] = t.terms.as_slice() else {
            return Err(format!("branch {}", t.display()));
        };
        ensure(*e == Q::new(1.into(), 2.into()) && c.times(c) == two_k && t.exact, || format!("branch {}", t.display()))?;
        signs.push(t.display_terms().starts_with('-'));
    }
    signs.sort();
    ensure(signs == [false, true], || "branches are not a ± pair".into())?;
    ensure(sol.local.poles.is_empty(), || format!("{} branches at y(0) = infinity", sol.local.poles.len()))
}

fn xy(terms: &[(i64, u32, u32)]) -> MultiPoly<K> {
    MultiPoly::from_terms(terms.iter().map(|&(c, a, b)| (Mono::new(vec![a, b]), K::from_rational(&qi(c)))))
}

fn c3() -> Outcome {
    let start = Instant::now();
    let fams = alg_solution_system(&system(EXAMPLE)).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(5))?;
    let target = xy(&[(1, 0, 2), (-2, 1, 0)]);
    let f = fams
        .iter()
        .find(|f| f.g == target)
        .ok_or_else(|| format!("families {:?}", fams.iter().map(|f| f.display_g()).collect::<Vec<_>>()))?;
    ensure((f.degree_x, f.degree_y) == (1, 2) && f.bounds == (1, 2), || {
        format!("degrees ({}, {}) bounds {:?}", f.degree_x, f.degree_y, f.bounds)
    })?;
    // G(x + y0²/2, Y) is the family member through y(0) = y0.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let y0 = random_q(&mut rng);
        let half = K::from_rational(&(&y0 * &y0 / qi(2)));
        let shifted = f.g.substitute(0, &MultiPoly::var(0).add(&MultiPoly::constant(half)));
        let want = xy(&[(1, 0, 2), (-2, 1, 0)]).sub(&MultiPoly::constant(K::from_rational(&(&y0 * &y0))));
        ensure(shifted == want, || format!("shift by {y0}"))?;
    }
    Ok(())
}

/// `Res_x(F, dF/dx)` for `F = x²y' - y + x`, with `x` as variable 3.
fn dimension_two_equation() -> MultiPoly<Q> {
    let p = |t: &[(i64, &[u32])]| MultiPoly::<Q>::from_int_terms(t);
    let f = p(&[(1, &[0, 1, 0, 2]), (-1, &[1]), (1, &[0, 0, 0, 1])]);
    let df = p(&[(2, &[0, 1, 0, 1]), (1, &[0, 0, 1, 2]), (-1, &[0, 1]), (1, &[])]);
    resultant(&f, &df, 3)
}

fn c4() -> Outcome {
    let start = Instant::now();
    let r = dimension_two_equation();
    let quoted = "y'' + y''^2*y^2 - y''*y' + 4*y''*y'*y - y'^2 - 2*y''*y'^2*y - 4*y'^3*y + y'^4 = 0";
    let expected = system(quoted).equations[0].normalize();
    ensure(r.normalize() == expected, || format!("resultant {}", r.display_y()))?;
    let text = format!("{} = 0", r.display_y());
    let s = parse_system_with(&text, 16).map_err(|e| e.to_string())?.system;
    match reduce_system(&s) {
        Err(AodeError::DimensionError { dimension: 2 }) => {}
        other => return Err(format!("reduce gave {other:?}")),
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    let out = binary(&["reduce", &text]);
    ensure(out.status.code() == Some(2), || format!("exit status {:?}", out.status.code()))
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let g = random_reduced_equation(&mut rng);
        let s = DiffSystem::new(vec![g.clone()]).map_err(|e| e.to_string())?;
        let r = reduce_system(&s).map_err(|e| format!("{}: {e}", g.display_y()))?;
        ensure(r.h == g, || format!("reduce({}) = {}", g.display_y(), r.h.display_y()))?;
    }
    Ok(())
}

fn check_truncations<'a>(s: &DiffSystem, ts: impl Iterator<Item = &'a PuiseuxTruncation>, label: &str) -> Outcome {
    for t in ts {
        let v = verify_truncation(s, t, &t.truncation_order).map_err(|e| e.to_string())?;
        ensure(v.ok, || format!("{label}: {} fails", t.display()))?;
    }
    Ok(())
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for text in corpus() {
        let s = system(&text);
        let again = parse_system_with(&print_system(&s), 16).map_err(|e| e.to_string())?.system;
        ensure(again == s, || format!("{text}: print/parse round trip"))?;
        for at_infinity in [false, true] {
            let sol = puiseux_solve_system(&s, None, at_infinity).map_err(|e| format!("{text}: {e}"))?;
            check_truncations(&s, sol.local.truncations().chain(&sol.infinity), &text)?;
            ensure(sol.all_verified(), || format!("{text}: a reported check failed"))?;
        }
        for f in alg_solution_system(&s).map_err(|e| format!("{text}: {e}"))? {
            let h = f.source_factor.map(K::from_rational);
            ensure(verify_algebraic(&f.g, &h), || format!("{text}: {}", f.display_g()))?;
            for _ in 0..3 {
                let c = random_q(&mut rng);
                ensure(f.verify_shifted(&c), || format!("{text}: {} shifted by {c}", f.display_g()))?;
            }
        }
        for r in rational_solutions(&s).map_err(|e| format!("{text}: {e}"))? {
            ensure(r.verified, || format!("{text}: {}", r.display()))?;
        }
    }
    Ok(())
}

/// Unique non-exact truncations carry a dominated indicial function whose
/// rational root, recomputed here, does not exceed the truncation order.
fn determinacy(t: &PuiseuxTruncation) -> Outcome {
    if t.exact || !t.unique_extension {
        return Ok(());
    }
    let cert = t.certificate.as_ref().ok_or_else(|| format!("{}: no certificate", t.display()))?;
    ensure(cert.dominated, || format!("{}: not dominated", t.display()))?;
    ensure(!(cert.a.is_zero() && cert.b.is_zero()), || format!("{}: indicial function vanishes", t.display()))?;
    let root = if cert.b.is_zero() {
        None
    } else {
        cert.a.negated().over(&cert.b).as_rational()
    };
    ensure(root == cert.root, || format!("{}: certificate root mismatch", t.display()))?;
    let kappa_order = t.point.sigma() * &t.truncation_order;
    ensure(root.is_none_or(|r| r <= kappa_order), || format!("{}: free coefficient beyond the order", t.display()))
}

fn c7() -> Outcome {
    let s = system(EXAMPLE);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let x0 = random_q(&mut rng);
        let y0 = loop {
            let y = random_q(&mut rng);
            if !y.is_zero() {
                break y;
            }
        };
        let (order, found) = solve_system_at_point(&s, &x0, &y0, Some(qi(3))).map_err(|e| e.to_string())?;
        ensure(order == qi(3), || format!("order {order}"))?;
        let hit = found.iter().any(|(t, v)| {
            v.ok && t.center == x0 && t.value() == Some(K::from_rational(&y0)) && (t.exact || t.truncation_order >= qi(3))
        });
        ensure(hit, || format!("no verified truncation through ({x0}, {y0})"))?;
        for (t, _) in &found {
            determinacy(t)?;
        }
    }
    let (_, found) = solve_system_at_point(&s, &qi(1), &qi(0), Some(qi(3))).map_err(|e| e.to_string())?;
    ensure(
        found.iter().any(|(t, v)| v.ok && t.ramification == 2 && t.initial == InitialValue::Finite(K::zero())),
        || "no ramified branch through y = 0".into(),
    )?;
    let sol = puiseux_solve_system(&s, Some(qi(3)), false).map_err(|e| e.to_string())?;
    sol.local.truncations().try_for_each(determinacy)?;
    for text in corpus() {
        let sol = puiseux_solve_system(&system(&text), None, false).map_err(|e| format!("{text}: {e}"))?;
        sol.local.truncations().try_for_each(determinacy)?;
    }
    Ok(())
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 200,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn c8() -> Outcome {
    let start = Instant::now();
    run_property("gcd", (poly_strategy(2, 3, 3), poly_strategy(2, 3, 3), nonconstant(2, 2, 3)), |(f, g, h)| {
        prop_gcd(&f, &g, &h)
    })?;
    run_property("resultant", (nonconstant(2, 3, 3), nonconstant(2, 3, 3), poly_strategy(2, 2, 2)), |(f, g, c)| {
        prop_resultant(&f, &g, &c)
    })?;
    run_property("squarefree", (nonconstant(3, 2, 3), poly_strategy(3, 2, 2)), |(f, g)| prop_squarefree(&f, &g))?;
    run_property("factor", (nonconstant(2, 3, 3), nonconstant(2, 2, 3)), |(f, g)| prop_factor(&f.mul(&g)))?;
    run_property("chains", proptest::collection::vec(nonconstant(3, 2, 3), 1..=3), |sys| prop_chains(&sys))?;
    within(start.elapsed(), Duration::from_secs(60))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("reduction of the example system", c1),
        ("series solutions of the example system", c2),
        ("algebraic solution family", c3),
        ("dimension two is rejected", c4),
        ("single equation is its own reduction", c5),
        ("corpus solutions verify", c6),
        ("initial values and determinacy", c7),
        ("kernel properties", c8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {}: PASS ({secs:.2}s) {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.2}s) {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

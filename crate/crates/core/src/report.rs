//! Text and JSON renderings of command results.

use serde_json::{json, Value};

use crate::algebraic::{AlgebraicSolutionFamily, RationalSolution};
use crate::arith::extension::AlgebraicNumber;
use crate::arith::field::Q;
use crate::chains::RegularChain;
use crate::puiseux::{InitialValue, LinearSolution, PuiseuxTruncation, SolutionFamily, SystemSolution};
use crate::reduction::{DiscardReason, ReducedEquation};
use crate::verify::Verification;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn chain_text(c: &RegularChain) -> String {
    c.polys.iter().map(|p| format!("{} = 0", p.display_y())).collect::<Vec<_>>().join(", ")
}

fn chain_json(c: &RegularChain) -> Value {
    json!(c.polys.iter().map(|p| p.display_y()).collect::<Vec<_>>())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

pub fn render_chains(chains: &[RegularChain], format: Format) -> String {
    match format {
        Format::Json => pretty(&json!(chains.iter().map(chain_json).collect::<Vec<_>>())),
        Format::Text => chains
            .iter()
            .enumerate()
            .map(|(i, c)| format!("chain {}: {}\n", i + 1, chain_text(c)))
            .collect(),
    }
}

fn discard_reason(r: &DiscardReason) -> &'static str {
    match r {
        DiscardReason::DimensionZero => "dimension zero",
        DiscardReason::AlgebraicInY => "no derivative in the chain",
    }
}

pub fn render_reduce(r: &ReducedEquation, format: Format) -> String {
    let constants = if r.constant_solutions.is_zero() {
        "every constant".to_string()
    } else if r.constant_solutions.is_constant() {
        "none".to_string()
    } else {
        format!("roots of {}", r.constant_solutions.display_y())
    };
    match format {
        Format::Json => pretty(&json!({
            "h": r.h.display_y(),
            "chains": r.per_chain.iter().map(|c| json!({
                "chain": chain_json(&c.chain),
                "g1": c.g1_normalized.display_y(),
                "y_factors": c.y_factors.display_y(),
                "yprime_factors": c.yprime_factors.display_y(),
                "intermediates": c.intermediates.iter().map(|p| p.display_y()).collect::<Vec<_>>(),
                "gcd": c.h.display_y(),
            })).collect::<Vec<_>>(),
            "discarded": r.discarded.iter().map(|(c, why)| json!({
                "chain": chain_json(c),
                "reason": discard_reason(why),
            })).collect::<Vec<_>>(),
            "constant_solutions": constants,
        })),
        Format::Text => {
            let mut out = format!("H = {}\n", r.h.display_y());
            for (i, c) in r.per_chain.iter().enumerate() {
                out += &format!("chain {}: {}\n", i + 1, chain_text(&c.chain));
                out += &format!("  G1 = {}\n", c.g1_normalized.display_y());
                for (j, h) in c.intermediates.iter().enumerate() {
                    out += &format!("  H{} = {}\n", j + 1, h.display_y());
                }
                out += &format!("  gcd = {}\n", c.h.display_y());
            }
            for (c, why) in &r.discarded {
                out += &format!("discarded ({}): {}\n", discard_reason(why), chain_text(c));
            }
            out += &format!("constant solutions: {constants}\n");
            out
        }
    }
}

fn q_json(q: &Q) -> Value {
    json!(q.to_string())
}

fn initial_text(t: &PuiseuxTruncation) -> String {
    match (&t.initial, t.reciprocal) {
        (InitialValue::Finite(v), false) => v.to_string(),
        _ => "infinity".to_string(),
    }
}

fn verification_json(v: &Verification) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn truncation_json(t: &PuiseuxTruncation, check: Option<&Verification>) -> Value {
    json!({
        "display": t.display(),
        "point": t.point,
        "center": q_json(&t.center),
        "initial": initial_text(t),
        "reciprocal": t.reciprocal,
        "terms": t.terms.iter().map(|(e, c)| json!([e.to_string(), c.to_json()])).collect::<Vec<_>>(),
        "ramification": t.ramification,
        "truncation_order": q_json(&t.truncation_order),
        "exact": t.exact,
        "unique_extension": t.unique_extension,
        "free_exponents": t.free_exponents.iter().map(q_json).collect::<Vec<_>>(),
        "certificate": t.certificate.as_ref().map(|c| json!({
            "a": c.a.to_json(),
            "b": c.b.to_json(),
            "root": c.root.as_ref().map(q_json),
            "dominated": c.dominated,
        })),
        "verification": check.map(verification_json),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn truncation_text(t: &PuiseuxTruncation, check: Option<&Verification>) -> String {
    let mut flags = vec![format!("ramification {}", t.ramification)];
    if t.exact {
        flags.push("exact".into());
    } else {
        flags.push(format!("order {}", t.truncation_order));
    }
    if t.unique_extension {
        flags.push("unique extension".into());
    }
    if let Some(f) = t.coefficient_field() {
        flags.push(format!("over {f}"));
    }
    if let Some(v) = check {
        flags.push(format!("verified: {}", yes(v.ok)));
    }
    let mut out = format!("  {}\n    {}\n", t.display(), flags.join(", "));
    if !t.free_exponents.is_empty() {
        let e: Vec<String> = t.free_exponents.iter().map(|e| e.to_string()).collect();
        out += &format!("    free coefficients set to 0 at exponents {}\n", e.join(", "));
    }
    out
}

fn family_json(f: &SolutionFamily, check: Option<&Verification>) -> Value {
    json!({
        "display": f.display(),
        "slope_relation": f.slope_relation(),
        "constraints": f.display_constraints(),
        "exact": f.exact,
        "truncation_order": q_json(&f.truncation_order),
        "verification": check.map(verification_json),
    })
}

fn linear_text(l: &[LinearSolution]) -> String {
    if l.is_empty() {
        return "linear solutions: none\n".into();
    }
    let mut out = "linear solutions:\n".to_string();
    for s in l {
        out += &format!("  {}\n", s.display());
    }
    out
}

fn value_text(v: &AlgebraicNumber) -> String {
    v.to_string()
}

pub fn render_solve(sol: &SystemSolution, format: Format) -> String {
    let all: Vec<&PuiseuxTruncation> = sol.local.truncations().chain(&sol.infinity).collect();
    let check = |t: &PuiseuxTruncation| {
        all.iter()
            .position(|u| std::ptr::eq(*u, t))
            .and_then(|i| sol.truncation_checks.get(i))
    };
    match format {
        Format::Json => pretty(&json!({
            "reduced_equation": sol.h_star.display_y(),
            "order": q_json(&sol.order),
            "families": sol.local.families.iter().enumerate()
                .map(|(i, f)| family_json(f, sol.family_checks.get(i))).collect::<Vec<_>>(),
            "critical": sol.local.critical.iter().map(|(v, bs)| json!({
                "y0": v.to_json(),
                "branches": bs.iter().map(|t| truncation_json(t, check(t))).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "poles": sol.local.poles.iter().map(|t| truncation_json(t, check(t))).collect::<Vec<_>>(),
            "infinity": sol.infinity.iter().map(|t| truncation_json(t, check(t))).collect::<Vec<_>>(),
            "linear": sol.linear.iter().map(|l| l.display()).collect::<Vec<_>>(),
            "diagnostics": sol.local.diagnostics,
            "all_verified": sol.all_verified(),
        })),
        Format::Text => {
            let mut out = format!("reduced equation: {} = 0\norder: {}\n", sol.h_star.display_y(), sol.order);
            if sol.h_star.is_constant() {
                out = format!("reduced equation: none (H = {})\norder: {}\n", sol.h_star.display_y(), sol.order);
            }
            for (i, f) in sol.local.families.iter().enumerate() {
                out += "family through y(0) = y0:\n";
                out += &format!("  {}\n", f.display());
                if let Some(r) = f.slope_relation() {
                    out += &format!("    where {r} = 0\n");
                }
                let cs = f.display_constraints();
                if !cs.is_empty() {
                    out += &format!("    for {}\n", cs.join(", "));
                }
                if let Some(v) = sol.family_checks.get(i) {
                    out += &format!("    verified: {}\n", yes(v.ok));
                }
            }
            for (v, bs) in &sol.local.critical {
                out += &format!("y(0) = {}:\n", value_text(v));
                if bs.is_empty() {
                    out += "  none\n";
                }
                for t in bs {
                    out += &truncation_text(t, check(t));
                }
            }
            if !sol.local.families.is_empty() || !sol.local.critical.is_empty() || !sol.local.poles.is_empty() {
                out += "y(0) = infinity:\n";
                if sol.local.poles.is_empty() {
                    out += "  none\n";
                }
                for t in &sol.local.poles {
                    out += &truncation_text(t, check(t));
                }
            }
            if !sol.infinity.is_empty() {
                out += "x -> infinity:\n";
                for t in &sol.infinity {
                    out += &truncation_text(t, check(t));
                }
            }
            if sol.is_empty() {
                out += "no non-constant solutions\n";
            }
            out += &linear_text(&sol.linear);
            for d in &sol.local.diagnostics {
                out += &format!("note: {}\n", d.message);
            }
            out
        }
    }
}

pub fn render_algebraic(
    families: &[AlgebraicSolutionFamily],
    rational: &[RationalSolution],
    rational_only: bool,
    format: Format,
) -> String {
    let fams: Vec<&AlgebraicSolutionFamily> = families.iter().filter(|f| !rational_only || f.degree_y == 1).collect();
    match format {
        Format::Json => pretty(&json!({
            "families": fams.iter().map(|f| json!({
                "g": f.display_g(),
                "family": f.display_family(),
                "degree_x": f.degree_x,
                "degree_y": f.degree_y,
                "bounds": [f.bounds.0, f.bounds.1],
                "source_factor": f.source_factor.display_y(),
                "cross_checked": f.cross_checked,
                "from_linear": f.from_linear,
            })).collect::<Vec<_>>(),
            "rational": rational.iter().map(|r| json!({
                "display": r.display(),
                "degree": r.degree,
                "bound": r.bound,
                "verified": r.verified,
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = String::new();
            if fams.is_empty() && rational.is_empty() {
                out += "no non-constant algebraic solutions\n";
            }
            for f in fams {
                out += &format!("G(x, Y) = {}\n", f.display_g());
                out += &format!("  family: {} = 0\n", f.display_family());
                out += &format!(
                    "  degrees (x, Y) = ({}, {}), bounds ({}, {})\n",
                    f.degree_x, f.degree_y, f.bounds.0, f.bounds.1
                );
                out += &format!("  solves {} = 0\n", f.source_factor.display_y());
            }
            for r in rational {
                out += &format!(
                    "rational: {}  (degree {} <= {}, verified: {})\n",
                    r.display(),
                    r.degree,
                    r.bound,
                    yes(r.verified)
                );
            }
            out
        }
    }
}

pub fn render_verification(v: &Verification, order: &Q, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({ "order": q_json(order), "result": verification_json(v) })),
        Format::Text => {
            let mut out = format!("verified: {}\n", yes(v.ok));
            for (i, r) in v.residuals.iter().enumerate() {
                let first = match &r.first_nonzero {
                    Some(e) => format!("non-zero residual term at x^{e}"),
                    None => "no non-zero residual term".into(),
                };
                let known = match &r.known_below {
                    Some(k) => format!("residual known below x^{k}"),
                    None => "residual exact".into(),
                };
                out += &format!("  equation {}: {first}, {known}\n", i + 1);
            }
            out
        }
    }
}

pub fn render_point(order: &Q, found: &[(PuiseuxTruncation, Verification)], format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "order": q_json(order),
            "branches": found.iter().map(|(t, v)| truncation_json(t, Some(v))).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("order: {order}\n");
            if found.is_empty() {
                out += "no non-constant solutions through this point\n";
            }
            for (t, v) in found {
                out += &truncation_text(t, Some(v));
            }
            out
        }
    }
}

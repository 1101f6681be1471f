//! Machine-readable forms of results. Coefficients are exact rationals
//! rendered as strings; keys come out sorted.

use serde_json::{json, Value};

use fdsg::algebra::{Polynomial, TensorPolynomial};
use fdsg::analytic::IdentityCheck;
use fdsg::checks::SuiteReport;
use fdsg::ddl::{CriterionReport, Verdict};
use fdsg::structure::{PeelingResult, Terminal};
use fdsg::CheckReport;

pub fn polynomial(p: &Polynomial) -> Value {
    json!({
        "text": p.to_string(),
        "terms": p.iter().map(|(e, c)| json!({"element": e.to_string(), "coeff": c.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn tensor(t: &TensorPolynomial) -> Value {
    json!({
        "text": t.to_string(),
        "terms": t
            .iter()
            .map(|((a, b), c)| json!({"left": a.to_string(), "right": b.to_string(), "coeff": c.to_string()}))
            .collect::<Vec<_>>(),
    })
}

pub fn report(r: &CheckReport) -> Value {
    json!({
        "name": r.name,
        "bound": r.bound,
        "cases": r.cases,
        "passed": r.passed(),
        "failures": r.failures,
        "notes": r.notes,
    })
}

pub fn suite(s: &SuiteReport) -> Value {
    json!({
        "command": "check",
        "bound": s.bound,
        "seed": s.seed,
        "passed": s.passed(),
        "cases": s.cases(),
        "modules": s.modules.iter().map(|m| json!({
            "module": m.module,
            "passed": m.passed(),
            "reports": m.reports.iter().map(report).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn criterion(c: &CriterionReport) -> Value {
    json!({
        "bound": c.bound,
        "passed": c.passed(),
        "notes": c.notes,
        "conditions": c.verdicts.iter().map(|(cond, v)| {
            let verdict = match v {
                Verdict::Exhaustive => json!({"verdict": "exhaustive"}),
                Verdict::VerifiedToBound(n) => json!({"verdict": "verified-to-bound", "bound": n}),
                Verdict::Violated(w) => json!({
                    "verdict": "violated",
                    "element": w.element.to_string(),
                    "explanation": w.explanation,
                    "decompositions": w.decompositions.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
                }),
            };
            json!({"condition": cond.roman(), "description": cond.describe(), "result": verdict})
        }).collect::<Vec<_>>(),
    })
}

pub fn peeling(p: &PeelingResult) -> Value {
    let terminal = match &p.terminal {
        Terminal::Finite(t) => json!({"finite": true, "elements": t.iter().map(ToString::to_string).collect::<Vec<_>>()}),
        Terminal::Infinite(s) => json!({"finite": false, "semigroup": s.name()}),
    };
    json!({
        "command": "peel",
        "semigroup": p.semigroup.name(),
        "layers": p.layers.iter().map(|l| json!({
            "index": l.index,
            "neutral": l.neutral.to_string(),
            "group": l.group.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "terminal": terminal,
    })
}

pub fn identity(c: &IdentityCheck, command: &str) -> Value {
    json!({
        "command": command,
        "identity": c.identity,
        "lhs": {"value": c.lhs.value, "error_bound": c.lhs.error_bound},
        "rhs": {"value": c.rhs.value, "error_bound": c.rhs.error_bound},
        "terms": c.terms.iter().map(|(t, k, e)| json!({"term": t, "coeff": k, "value": e.value, "error_bound": e.error_bound})).collect::<Vec<_>>(),
        "difference": c.difference(),
        "budget": c.budget(),
        "passed": c.passed(),
    })
}

//! JSON documents for decompositions, bound reports and certificates.
//! Exact values are `{"num", "den"}` string pairs; only certified bounds
//! carry a float, next to their directed decimal enclosure.

use serde_json::{json, Value};

use crate::eisenstein::EisensteinSeries;
use crate::exact::certified::{CertifiedReal, Direction};
use crate::exact::{NFElem, QSeries, Rational};
use crate::iwasawa::{Conclusion, IwasawaCertificate, PrimeVerdict};
use crate::modsym::{Eigenform, ModularSymbolSpace};
use crate::rankin::{BoundReport, DecompositionResult, DenominatorCheck, KeyEqualityCheck};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "rankin";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal digits printed for certified bounds.
pub const BOUND_DIGITS: u32 = 12;

pub fn rational(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn nf_element(e: &NFElem) -> Value {
    json!({
        "field": e.field().minpoly().to_string(),
        "coords": e.coords().iter().map(rational).collect::<Vec<_>>(),
        "display": e.to_string(),
    })
}

pub fn certified(c: &CertifiedReal) -> Value {
    json!({
        "value": c.approx_f64(),
        "lower": c.decimal(BOUND_DIGITS, Direction::Lower),
        "upper": c.decimal(BOUND_DIGITS, Direction::Upper),
        "direction": "enclosure",
        "precision_bits": c.precision_bits,
    })
}

pub fn series(s: &QSeries) -> Value {
    json!({
        "precision": s.precision(),
        "field": s.field().minpoly().to_string(),
        "coefficients": s.coeffs().iter().map(nf_element_or_rational).collect::<Vec<_>>(),
    })
}

fn nf_element_or_rational(e: &NFElem) -> Value {
    match e.to_rational() {
        Some(q) if e.field().is_rational() => rational(&q),
        _ => nf_element(e),
    }
}

pub fn eisenstein(e: &EisensteinSeries) -> Value {
    json!({
        "level": e.level,
        "weight": e.weight,
        "expansion": series(&e.expansion),
    })
}

pub fn eigenform(f: &Eigenform) -> Value {
    let table: serde_json::Map<String, Value> = f
        .eigenvalues
        .iter()
        .map(|(p, a)| (p.to_string(), nf_element_or_rational(a)))
        .collect();
    json!({
        "label": f.label,
        "level": f.level,
        "field": f.field.minpoly().to_string(),
        "degree": f.degree(),
        "rational": f.is_rational(),
        "eigenvalues": table,
    })
}

fn eigenform_summary(f: &Eigenform) -> Value {
    json!({
        "label": f.label,
        "field": f.field.minpoly().to_string(),
        "degree": f.degree(),
    })
}

pub fn space(s: &ModularSymbolSpace, forms: &[Eigenform]) -> Value {
    json!({
        "level": s.level(),
        "sign": s.sign().to_string(),
        "dimension": s.dimension(),
        "cuspidal_dimension": s.cuspidal_dimension(),
        "newforms": forms.iter().map(eigenform_summary).collect::<Vec<_>>(),
    })
}

pub fn decomposition(d: &DecompositionResult) -> Value {
    let forms: Vec<Value> = d
        .newforms
        .iter()
        .map(|c| {
            json!({
                "form": eigenform_summary(&c.form),
                "lambda": nf_element_or_rational(&c.lambda),
                "lambda_times_8": nf_element_or_rational(&c.lambda.scale(&Rational::from_integer(8.into()))),
                "trace": rational(&c.lambda.trace()),
            })
        })
        .collect();
    json!({
        "level": d.level,
        "l_value_at_zero": rational(&d.l_value),
        "eisenstein_coefficient": rational(&d.eisenstein_coefficient),
        "newforms": forms,
        "precision": d.precision,
        "solve_rows": d.solve_rows,
        "residual_checked_to": d.residual_checked_to,
    })
}

pub fn key_equality(k: &KeyEqualityCheck) -> Value {
    json!({
        "l_value_at_zero": rational(&k.l_value),
        "first_coefficient_sum": rational(&k.first_coefficient_sum),
        "difference": rational(&k.difference),
        "passed": k.passed(),
    })
}

fn denominator(d: &DenominatorCheck) -> Value {
    match d {
        DenominatorCheck::Passed { m } => json!({ "status": "passed", "torsion_order": m }),
        DenominatorCheck::Failed => json!({ "status": "failed" }),
        DenominatorCheck::Skipped => json!({ "status": "skipped", "reason": "no modular degree supplied" }),
        DenominatorCheck::NotRational => json!({ "status": "not-applicable" }),
    }
}

pub fn bound_report(r: &BoundReport) -> Value {
    let forms: Vec<Value> = r
        .forms
        .iter()
        .map(|f| {
            json!({
                "label": f.label,
                "totally_real": f.totally_real,
                "modular_degree": f.modular_degree,
                "denominator": denominator(&f.denominator),
                "embeddings": f.embeddings.iter().map(|e| json!({
                    "value": certified(&e.value),
                    "nonnegative": e.nonnegative,
                    "below_bound": e.below_bound,
                    "eight_times_below_bound": e.eight_times_below_bound,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "level": r.level,
        "ramare_bound": certified(&r.ramare_bound),
        "l_value_below_bound": r.l_value_below_bound,
        "nonnegativity": r.nonnegativity_holds(),
        "size_bound": r.size_bound_holds(),
        "key_equality": key_equality(&r.key_equality),
        "forms": forms,
        "all_passed": r.all_passed(),
    })
}

pub fn verdict(v: &PrimeVerdict) -> Value {
    let (conclusion, reasons) = match &v.conclusion {
        Conclusion::MuLambdaZero => ("mu=lambda=0", vec![]),
        Conclusion::Inconclusive(r) => ("inconclusive", r.iter().map(|x| x.to_string()).collect()),
    };
    json!({
        "p": v.p,
        "reduction": v.reduction.to_string(),
        "a_p": v.a_p,
        "anomalous": v.anomalous,
        "lambda_valuation": { "numerator": v.lambda_valuation.0, "denominator": v.lambda_valuation.1 },
        "kato_surjectivity": v.kato.to_string(),
        "conclusion": conclusion,
        "reasons": reasons,
        "corollaries": v.corollaries.map(|c| json!({
            "rank_zero_every_layer": c.rank_zero_every_layer,
            "sha_p_primary_trivial": c.sha_p_primary_trivial,
        })),
    })
}

pub fn certificate(c: &IwasawaCertificate) -> Value {
    json!({
        "level": c.level,
        "label": c.label,
        "modular_degree": c.modular_degree,
        "modular_degree_source": c.modular_degree_source,
        "manin_constant_assumed_one": c.manin_constant_one,
        "lambda": rational(&c.lambda),
        "theorem1_bound": c.theorem1_bound.as_ref().map(certified),
        "p_max": c.p_max,
        "verdicts": c.verdicts.iter().map(verdict).collect::<Vec<_>>(),
    })
}

/// Top-level document with schema and tool metadata.
pub fn document(command: &str, inputs: Value, body: Value) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "command": command,
        "inputs": inputs,
        "result": body,
    })
}

pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;
    use crate::rankin::decompose;

    #[test]
    fn exact_strings() {
        assert_eq!(rational(&frac(-3, 5)), json!({"num": "-3", "den": "5"}));
    }

    #[test]
    fn round_trip_is_stable() {
        let d = decompose(11).unwrap();
        let doc = document("decompose", json!({"level": 11}), decomposition(&d));
        let s = to_string(&doc);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(to_string(&back), s);
        assert_eq!(back["schema"], 1);
        assert_eq!(back["result"]["eisenstein_coefficient"]["num"], "3");
    }
}

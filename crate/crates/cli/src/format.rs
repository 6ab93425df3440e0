//! Text and JSON rendering of evaluation results.

use endoring_core::{Digits, EndoMatrix, ModulePoint, RingParams};
use serde_json::{json, Value as Json};

use crate::eval::{Outcome, Value};

/// Base-`p` expansion of an element of `Z_{p^m}`, highest digit first:
/// `103` over `p = 5` is `5^2*4 + 3`. Zero digits are skipped.
pub fn digit_form(d: &Digits) -> String {
    let p = d.params().p();
    let terms: Vec<String> = d
        .digits()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &u)| u != 0)
        .map(|(k, &u)| match k {
            0 => format!("{u}"),
            1 => format!("{p}*{u}"),
            _ => format!("{p}^{k}*{u}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// `n = <digit form>` for every element that has more than one base-`p` digit.
fn expansions<'a>(entries: impl IntoIterator<Item = &'a Digits>) -> String {
    let parts: Vec<String> = entries
        .into_iter()
        .filter(|d| d.to_int() >= d.params().p())
        .map(|d| format!("{} = {}", d, digit_form(d)))
        .collect();
    if parts.is_empty() {
        String::new()
    } else {
        format!("  where {}", parts.join(", "))
    }
}

pub fn matrix_text(m: &EndoMatrix) -> String {
    let c_full = Digits::from_u64(m.params(), m.c_full());
    format!("{m}{}", expansions([&c_full, m.d()]))
}

pub fn point_text(v: &ModulePoint) -> String {
    format!("{v}{}", expansions([v.y()]))
}

pub fn value_text(value: &Value) -> String {
    match value {
        Value::Matrix(m) => matrix_text(m),
        Value::Point(v) => point_text(v),
        Value::Scalar(s) if s.to_int() >= s.params().p() => format!("{s} = {}", digit_form(s)),
        Value::Scalar(s) => s.to_string(),
        Value::Poly(f) => f.to_string(),
    }
}

/// One line of output, or `None` when the statement produced nothing.
pub fn outcome_text(outcome: &Outcome) -> Option<String> {
    match outcome {
        Outcome::Bound { name, value } => Some(format!("{name} = {}", value_text(value))),
        Outcome::Value(value) => Some(value_text(value)),
        Outcome::Nothing => None,
    }
}

pub fn value_json(value: &Value) -> Json {
    match value {
        Value::Matrix(m) => json!([[m.a(), m.b()], [m.c_full(), m.d().to_int()]]),
        Value::Point(v) => json!([v.x(), v.y().to_int()]),
        Value::Scalar(s) => json!(s.to_int()),
        // Little-endian coefficients, constant term first.
        Value::Poly(f) => Json::Array(
            f.coeffs()
                .iter()
                .map(|&c| match i64::try_from(c) {
                    Ok(c) => json!(c),
                    Err(_) => json!(c.to_string()),
                })
                .collect(),
        ),
    }
}

pub fn outcome_json(params: RingParams, outcome: &Outcome) -> Option<Json> {
    let (name, value) = match outcome {
        Outcome::Bound { name, value } => (Some(name), value),
        Outcome::Value(value) => (None, value),
        Outcome::Nothing => return None,
    };
    let mut obj = json!({
        "p": params.p(),
        "m": params.m(),
        "kind": value.kind(),
        "value": value_json(value),
    });
    if let Some(name) = name {
        obj["name"] = json!(name);
    }
    Some(obj)
}

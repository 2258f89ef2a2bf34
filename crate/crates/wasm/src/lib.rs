//! Browser bindings for the `www/` demo page.
//!
//! Each exported function takes plain strings and numbers and returns a JSON
//! string, or throws a string describing what went wrong.

use listsym::equivariance::{self, Law};
use listsym::nfe::{enumerate_k_nfes, interpret};
use listsym::{
    extrapolate_fe_traced, extrapolate_nfe_from_doubleton, extrapolate_nfe_traced, Builtin, Elem,
    ListFunction, Scope, SublistTable,
};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Most witnesses a check sends back to the page.
const WITNESS_LIMIT: usize = 5;

/// Largest k the page may enumerate; 2*3^7 terms.
const MAX_K: usize = 8;

type Result<T> = std::result::Result<T, String>;

fn to_json(value: &impl Serialize) -> Result<String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn parse_list(s: &str) -> Result<Vec<Elem>> {
    let s = s.trim();
    if s.starts_with('[') {
        return serde_json::from_str(s).map_err(|e| format!("not a list: {e}"));
    }
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map(Elem)
                .map_err(|_| format!("not a non-negative integer: {x:?}"))
        })
        .collect()
}

fn parse_function(s: &str) -> Result<ListFunction> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| format!("bad function JSON: {e}"));
    }
    Builtin::ALL
        .iter()
        .find(|b| b.name() == s)
        .map(|b| ListFunction::builtin(*b))
        .ok_or_else(|| format!("unknown function {s:?}"))
}

/// Every k-NFE with its output on `input`.
pub fn nfes_on(k: usize, input: &str) -> Result<String> {
    if k > MAX_K {
        return Err(format!("k is limited to {MAX_K} here"));
    }
    let xs = parse_list(input)?;
    let rows: Vec<_> = enumerate_k_nfes(k)
        .into_iter()
        .map(|t| json!({ "term": t.to_string(), "blocks": t.blocks(), "output": interpret(&t, &xs) }))
        .collect();
    to_json(&json!({ "k": k, "count": rows.len(), "terms": rows }))
}

/// Checks one law (`map`, `filter` or `tail`) over every list of length at
/// most `max_len` on an alphabet of `alphabet` letters.
pub fn check_law(function: &str, law: &str, alphabet: usize, max_len: usize) -> Result<String> {
    let f = parse_function(function)?;
    let law = match law {
        "map" => Law::Map,
        "filter" => Law::Filter,
        "tail" => Law::Tail,
        other => return Err(format!("unknown law {other:?}")),
    };
    let scope = Scope::new(alphabet, max_len).map_err(|e| e.to_string())?;
    let mut report = equivariance::check(&f, law, scope).map_err(|e| e.to_string())?;
    let total = report.witnesses.len();
    report.witnesses.truncate(WITNESS_LIMIT);
    to_json(&json!({ "passed": report.passed(), "witness_count": total, "report": report }))
}

/// Rebuilds `f input` from examples, returning the vote rounds.
///
/// With `mode = "fe"` the examples are `[{"keep": [x, y], "output": [..]}]`;
/// with `mode = "nfe"` a single `{"input": [x, y], "output": [..]}`.
pub fn extrapolation_trace(examples: &str, input: &str, mode: &str) -> Result<String> {
    let xs = parse_list(input)?;
    match mode {
        "fe" => {
            let table: SublistTable<Elem> =
                serde_json::from_str(examples).map_err(|e| format!("bad examples: {e}"))?;
            let trace = extrapolate_fe_traced(&table, &xs).map_err(|e| e.to_string())?;
            to_json(&trace)
        }
        "nfe" => {
            #[derive(serde::Deserialize)]
            struct Example {
                input: Vec<Elem>,
                output: Vec<Elem>,
            }
            let ex: Example =
                serde_json::from_str(examples).map_err(|e| format!("bad example: {e}"))?;
            if xs.len() < 2 {
                let output = extrapolate_nfe_from_doubleton(&ex.input, &ex.output, &xs)
                    .map_err(|e| e.to_string())?;
                return to_json(&json!({ "method": "direct", "output": output }));
            }
            let trace =
                extrapolate_nfe_traced(&ex.input, &ex.output, &xs).map_err(|e| e.to_string())?;
            let output: Vec<Elem> = trace.output.iter().map(|t| t.value).collect();
            to_json(&json!({ "method": trace.method, "output": output, "tagged": trace }))
        }
        other => Err(format!("unknown mode {other:?}")),
    }
}

#[wasm_bindgen(js_name = nfesOn)]
pub fn nfes_on_js(k: usize, input: &str) -> std::result::Result<String, JsValue> {
    nfes_on(k, input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = checkLaw)]
pub fn check_law_js(
    function: &str,
    law: &str,
    alphabet: usize,
    max_len: usize,
) -> std::result::Result<String, JsValue> {
    check_law(function, law, alphabet, max_len).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = extrapolationTrace)]
pub fn extrapolation_trace_js(
    examples: &str,
    input: &str,
    mode: &str,
) -> std::result::Result<String, JsValue> {
    extrapolation_trace(examples, input, mode).map_err(|e| JsValue::from_str(&e))
}

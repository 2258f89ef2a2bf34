use std::collections::{BTreeMap, BTreeSet};

use anyhow::{bail, Context, Result};
use listsym::equivariance;
use listsym::nfe::{count_k_nfes, enumerate_k_nfes};
use listsym::{
    amal as amalgamate, decompose_pi, extrapolate_fe_traced, extrapolate_nfe_from_doubleton,
    Collection, Elem, Law, Scope, SublistTable,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::input::{parse_function, parse_list, read_source, show};
use crate::{Format, Mode, Status};

fn print_json(buf: &mut String, value: &impl Serialize) {
    say!(
        buf,
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialise")
    );
}

pub fn check(
    buf: &mut String,
    function: &str,
    law: Option<Law>,
    scope: Scope,
    format: Format,
) -> Result<Status> {
    let f = parse_function(function)?;
    let laws = match law {
        Some(law) => vec![law],
        None => Law::ALL.to_vec(),
    };
    let reports = laws
        .into_iter()
        .map(|law| equivariance::check(&f, law, scope))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    match format {
        Format::Json => print_json(
            buf,
            &json!({
                "function": f.to_string(),
                "scope": scope,
                "passed": passed,
                "reports": reports,
            }),
        ),
        Format::Text => {
            say!(buf, "function: {f}");
            say!(
                buf,
                "scope: alphabet {}, lists up to length {}",
                scope.alphabet,
                scope.max_len
            );
            for r in &reports {
                match r.witnesses.first() {
                    None => say!(buf, "{}: PASS", r.law),
                    Some(w) => {
                        say!(buf, "{}: FAIL ({} witnesses)", r.law, r.witnesses.len());
                        say!(buf, "  input          {}", show(&w.input));
                        say!(buf, "  transform      {}", w.transform);
                        say!(buf, "  transform(f x) {}", show(&w.lhs));
                        say!(buf, "  f(transform x) {}", show(&w.rhs));
                    }
                }
            }
        }
    }
    Ok(if passed {
        Status::Ok
    } else {
        Status::CheckFailed
    })
}

pub fn enumerate(buf: &mut String, k: usize, format: Format) -> Result<Status> {
    let terms = enumerate_k_nfes(k);
    let count = u32::try_from(k)
        .ok()
        .map(count_k_nfes)
        .context("k is too large")?;
    match format {
        Format::Json => print_json(buf, &json!({ "k": k, "count": count, "terms": terms })),
        Format::Text => {
            for t in &terms {
                let blocks = serde_json::to_string(t.blocks())?;
                say!(buf, "{:<16} {blocks}", t.to_string());
            }
            say!(buf, "count: {count}");
        }
    }
    Ok(Status::Ok)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubletonExample {
    input: Vec<Elem>,
    output: Vec<Elem>,
}

fn read_input(input: &str, examples: &str) -> Result<Vec<Elem>> {
    if input == "-" {
        if examples == "-" {
            bail!("--examples and --input cannot both read stdin");
        }
        parse_list(&read_source("-")?)
    } else {
        parse_list(input)
    }
}

pub fn extrapolate(
    buf: &mut String,
    examples: &str,
    input: &str,
    mode: Mode,
    format: Format,
) -> Result<Status> {
    let xs = read_input(input, examples)?;
    let source = read_source(examples)?;
    match mode {
        Mode::Fe => {
            let table: SublistTable<Elem> =
                serde_json::from_str(&source).context("parsing sublist examples")?;
            let trace = extrapolate_fe_traced(&table, &xs)?;
            match format {
                Format::Json => print_json(buf, &trace),
                Format::Text => say!(buf, "{}", show(&trace.output)),
            }
        }
        Mode::Nfe => {
            let ex: DoubletonExample =
                serde_json::from_str(&source).context("parsing the doubleton example")?;
            let output = extrapolate_nfe_from_doubleton(&ex.input, &ex.output, &xs)?;
            match format {
                Format::Json => print_json(buf, &json!({ "output": output })),
                Format::Text => say!(buf, "{}", show(&output)),
            }
        }
    }
    Ok(Status::Ok)
}

pub fn amal(
    buf: &mut String,
    examples: Option<&str>,
    input: Option<&str>,
    format: Format,
) -> Result<Status> {
    let chi = match (examples, input) {
        (Some(path), _) => {
            let lists: BTreeMap<Elem, Vec<Elem>> = serde_json::from_str(&read_source(path)?)
                .context("parsing the collection; expected {\"x\": [..], ..}")?;
            let universe: BTreeSet<Elem> = lists.keys().copied().collect();
            Collection::single(universe, lists).context("invalid collection")?
        }
        (None, Some(input)) => decompose_pi(&read_input(input, "")?),
        (None, None) => bail!("pass --examples or --input"),
    };
    let rebuilt = amalgamate(&chi)?;
    match format {
        Format::Json => print_json(
            buf,
            &json!({
                "collection": chi.lists().iter().map(|(k, l)| json!({"key": k, "list": l})).collect::<Vec<_>>(),
                "output": rebuilt,
            }),
        ),
        Format::Text => {
            for (key, l) in chi.lists() {
                say!(buf, "{key}: {}", show(l));
            }
            say!(buf, "amal: {}", show(&rebuilt));
        }
    }
    Ok(Status::Ok)
}

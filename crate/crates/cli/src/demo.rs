use anyhow::Result;
use listsym::equivariance::check_filter_equivariant;
use listsym::{
    extrapolate_fe, extrapolate_nfe_from_doubleton, list, square_multiplicity, Builtin, Elem,
    ListFunction, Scope, SublistTable,
};
use serde::Serialize;

use crate::input::show;
use crate::{Format, Status};

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    lines: Vec<String>,
}

fn reverse_from_doubleton() -> Result<Check> {
    let example = (list(&[1, 2]), list(&[2, 1]));
    let xs = list(&[0, 1, 2, 3]);
    let got = extrapolate_nfe_from_doubleton(&example.0, &example.1, &xs)?;
    let want = ListFunction::reverse().apply(&xs)?;
    let doubled = list(&[2, 1, 2, 1]);
    let ys = list(&[5, 6, 7]);
    let got2 = extrapolate_nfe_from_doubleton(&example.0, &doubled, &ys)?;
    let want2 = list(&[7, 6, 5, 7, 6, 5]);
    Ok(Check {
        name: "NFE extrapolated from one doubleton",
        passed: got == want && got2 == want2,
        lines: vec![
            format!(
                "f {} = {}  =>  f {} = {}",
                show(&example.0),
                show(&example.1),
                show(&xs),
                show(&got)
            ),
            format!(
                "f {} = {}  =>  f {} = {}",
                show(&example.0),
                show(&doubled),
                show(&ys),
                show(&got2)
            ),
        ],
    })
}

fn sort_from_sublists() -> Result<Check> {
    let xs = list(&[3, 2, 1, 2]);
    let sort = ListFunction::sort();
    let table = SublistTable::try_from_fn(&xs, |ys| sort.apply(ys))?;
    let got = extrapolate_fe(&table, &xs)?;
    let mut lines: Vec<String> = table
        .iter()
        .map(|((a, b), out)| {
            let kept = listsym::lists::filter_list(|y| y == a || y == b, &xs);
            format!("f {} = {}", show(&kept), show(out))
        })
        .collect();
    lines.push(format!("=>  f {} = {}", show(&xs), show(&got)));
    Ok(Check {
        name: "sort rebuilt from its two-value sublists",
        passed: got == list(&[1, 2, 2, 3]),
        lines,
    })
}

fn square_multiplicity_counterexample() -> Result<Check> {
    let scope = Scope::default();
    let f = ListFunction::builtin(Builtin::SquareMultiplicity);
    let fe = check_filter_equivariant(&f, scope)?.passed();
    let mut lines = vec![format!(
        "filter-equivariant at alphabet {}, length {}: {}",
        scope.alphabet, scope.max_len, fe
    )];
    let mut identity_on_doubletons = true;
    for pair in [[0, 1], [1, 0], [4, 7], [7, 4]] {
        let xs = list(&pair);
        let out = square_multiplicity(&xs);
        identity_on_doubletons &= out == xs;
        lines.push(format!("f {} = {}", show(&xs), show(&out)));
    }
    let xs = list(&[4, 7, 4, 7, 8]);
    let actual = square_multiplicity(&xs);
    let guess: Vec<Elem> = extrapolate_nfe_from_doubleton(&xs[..2], &xs[..2], &xs)?;
    lines.push(format!("f {} = {}", show(&xs), show(&actual)));
    lines.push(format!(
        "extrapolating from f [4,7] = [4,7] predicts {}",
        show(&guess)
    ));
    Ok(Check {
        name: "square multiplicity is not determined by doubletons",
        passed: fe && identity_on_doubletons && actual != xs && guess != actual,
        lines,
    })
}

pub fn run(buf: &mut String, format: Format) -> Result<Status> {
    let checks = vec![
        reverse_from_doubleton()?,
        sort_from_sublists()?,
        square_multiplicity_counterexample()?,
    ];
    let passed = checks.iter().filter(|c| c.passed).count();
    let all = passed == checks.len();
    match format {
        Format::Json => say!(
            buf,
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({ "passed": all, "checks": checks }))?
        ),
        Format::Text => {
            for c in &checks {
                say!(
                    buf,
                    "[{}] {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name
                );
                for line in &c.lines {
                    say!(buf, "    {line}");
                }
            }
            say!(buf, "demo: {passed} of {} checks passed", checks.len());
        }
    }
    Ok(if all { Status::Ok } else { Status::CheckFailed })
}

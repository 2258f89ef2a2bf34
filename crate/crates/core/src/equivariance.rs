//! Exhaustive finite-scope symmetry checks.
//!
//! `f` is checked against every transform in the scope's universe (all
//! predicates, all endo-maps of the alphabet, or `tail`) on every list of the
//! scope. Witnesses come out ordered by input list (shortest first), then by
//! transform.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::function::{EndoMap, ListFunction, Predicate};
use crate::lists::{self, Elem};
use crate::scope::Scope;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Map,
    Filter,
    Tail,
}

impl Law {
    pub const ALL: [Law; 3] = [Law::Map, Law::Filter, Law::Tail];
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Map => "map",
            Law::Filter => "filter",
            Law::Tail => "tail",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transform {
    Map(EndoMap),
    Filter(Predicate),
    Tail,
}

impl Transform {
    pub fn apply(&self, xs: &[Elem]) -> Result<Vec<Elem>> {
        match self {
            Transform::Map(m) => m.map(xs),
            Transform::Filter(p) => Ok(p.filter(xs)),
            Transform::Tail => lists::tail(xs),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Map(m) => m.fmt(f),
            Transform::Filter(p) => write!(f, "filter ({p})"),
            Transform::Tail => f.write_str("tail"),
        }
    }
}

/// `lhs = transform (f input)` and `rhs = f (transform input)`, which differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: Vec<Elem>,
    pub transform: Transform,
    pub lhs: Vec<Elem>,
    pub rhs: Vec<Elem>,
}

impl Witness {
    /// Re-evaluates both sides against `f` and reports whether they still
    /// disagree and match what was recorded.
    pub fn confirms(&self, f: &ListFunction) -> Result<bool> {
        let lhs = self.transform.apply(&f.apply(&self.input)?)?;
        let rhs = f.apply(&self.transform.apply(&self.input)?)?;
        Ok(lhs != rhs && lhs == self.lhs && rhs == self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub law: Law,
    pub function: String,
    pub scope: Scope,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl EquivarianceReport {
    fn new(law: Law, f: &ListFunction, scope: Scope, witnesses: Vec<Witness>) -> Self {
        EquivarianceReport {
            law,
            function: f.to_string(),
            scope,
            verdict: if witnesses.is_empty() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn witnesses_for(f: &ListFunction, scope: Scope, transforms: &[Transform]) -> Result<Vec<Witness>> {
    let mut witnesses = Vec::new();
    for xs in scope.lists() {
        let fx = f.apply(&xs)?;
        for t in transforms {
            let lhs = t.apply(&fx)?;
            let rhs = f.apply(&t.apply(&xs)?)?;
            if lhs != rhs {
                witnesses.push(Witness {
                    input: xs.clone(),
                    transform: t.clone(),
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(witnesses)
}

/// `map psi . f = f . map psi` for every endo-map `psi` of the alphabet.
pub fn check_map_equivariant(f: &ListFunction, scope: Scope) -> Result<EquivarianceReport> {
    let transforms: Vec<_> = scope.endo_maps()?.into_iter().map(Transform::Map).collect();
    let w = witnesses_for(f, scope, &transforms)?;
    Ok(EquivarianceReport::new(Law::Map, f, scope, w))
}

/// `filter phi . f = f . filter phi` for every subset predicate `phi`.
pub fn check_filter_equivariant(f: &ListFunction, scope: Scope) -> Result<EquivarianceReport> {
    let transforms: Vec<_> = scope
        .predicates()
        .into_iter()
        .map(Transform::Filter)
        .collect();
    let w = witnesses_for(f, scope, &transforms)?;
    Ok(EquivarianceReport::new(Law::Filter, f, scope, w))
}

/// `tail . f = f . tail` on nonempty inputs whose image is nonempty; the
/// tail of `[]` is undefined and those cases are skipped.
pub fn check_tail_equivariant(f: &ListFunction, scope: Scope) -> Result<EquivarianceReport> {
    let mut witnesses = Vec::new();
    for xs in scope.lists() {
        let fx = f.apply(&xs)?;
        if xs.is_empty() || fx.is_empty() {
            continue;
        }
        let lhs = lists::tail(&fx)?;
        let rhs = f.apply(&lists::tail(&xs)?)?;
        if lhs != rhs {
            witnesses.push(Witness {
                input: xs,
                transform: Transform::Tail,
                lhs,
                rhs,
            });
        }
    }
    Ok(EquivarianceReport::new(Law::Tail, f, scope, witnesses))
}

pub fn check(f: &ListFunction, law: Law, scope: Scope) -> Result<EquivarianceReport> {
    match law {
        Law::Map => check_map_equivariant(f, scope),
        Law::Filter => check_filter_equivariant(f, scope),
        Law::Tail => check_tail_equivariant(f, scope),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyVerdict {
    Pass,
    Fail,
    PreconditionFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyViolation {
    pub input: Vec<Elem>,
    pub output: Vec<Elem>,
    pub message: String,
}

/// Outcome of checking one of the structural lemmas at a scope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub scope: Scope,
    pub verdict: PropertyVerdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub precondition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inflation_factor: Option<usize>,
    pub violations: Vec<PropertyViolation>,
}

impl PropertyReport {
    pub(crate) fn from_violations(
        property: &str,
        scope: Scope,
        violations: Vec<PropertyViolation>,
    ) -> Self {
        PropertyReport {
            property: property.to_string(),
            scope,
            verdict: if violations.is_empty() {
                PropertyVerdict::Pass
            } else {
                PropertyVerdict::Fail
            },
            precondition: None,
            inflation_factor: None,
            violations,
        }
    }

    pub(crate) fn precondition_failed(property: &str, scope: Scope, why: &str) -> Self {
        PropertyReport {
            property: property.to_string(),
            scope,
            verdict: PropertyVerdict::PreconditionFailed,
            precondition: Some(why.to_string()),
            inflation_factor: None,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == PropertyVerdict::Pass
    }
}

/// Every value of `f xs` already occurs in `xs`.
pub fn check_no_new_values(f: &ListFunction, scope: Scope) -> Result<PropertyReport> {
    let mut violations = Vec::new();
    for xs in scope.lists() {
        let ys = f.apply(&xs)?;
        let foreign: Vec<Elem> = lists::unique_values(&ys)
            .into_iter()
            .filter(|y| !xs.contains(y))
            .collect();
        if !foreign.is_empty() {
            violations.push(PropertyViolation {
                input: xs,
                output: ys,
                message: format!("output introduces {foreign:?}"),
            });
        }
    }
    Ok(PropertyReport::from_violations(
        "no_new_values",
        scope,
        violations,
    ))
}

/// With `k = len (f [0])`, checks that `f` multiplies every element's count
/// (and so the length) by `k`. Requires `f` to pass both the map and the
/// filter check at `scope`.
pub fn check_nfe_counts(f: &ListFunction, scope: Scope) -> Result<PropertyReport> {
    const NAME: &str = "nfe_counts";
    let map_ok = check_map_equivariant(f, scope)?.passed();
    let filter_ok = check_filter_equivariant(f, scope)?.passed();
    if !(map_ok && filter_ok) {
        let why = match (map_ok, filter_ok) {
            (false, false) => "function fails the map and filter checks",
            (false, true) => "function fails the map check",
            _ => "function fails the filter check",
        };
        return Ok(PropertyReport::precondition_failed(NAME, scope, why));
    }
    let k = f.apply(&[Elem(0)])?.len();
    let mut violations = Vec::new();
    for xs in scope.lists() {
        let ys = f.apply(&xs)?;
        if ys.len() != k * xs.len() {
            violations.push(PropertyViolation {
                input: xs.clone(),
                output: ys.clone(),
                message: format!("length {} is not {k} x {}", ys.len(), xs.len()),
            });
            continue;
        }
        for x in lists::unique_values(&xs) {
            let m = lists::count(&x, &xs);
            let got = lists::count(&x, &ys);
            if got != k * m {
                violations.push(PropertyViolation {
                    input: xs.clone(),
                    output: ys.clone(),
                    message: format!("{x} occurs {got} times, expected {k} x {m}"),
                });
            }
        }
    }
    let mut report = PropertyReport::from_violations(NAME, scope, violations);
    report.inflation_factor = Some(k);
    Ok(report)
}

/// Table of `xs -> xs` without its first two elements; tail-equivariant.
pub fn drop_two_table(scope: Scope) -> ListFunction {
    ListFunction::Table(crate::function::TableFn::tabulate(scope, |xs| {
        xs.iter().skip(2).copied().collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{compose, pointwise_concat, Builtin, TableFn};
    use crate::list;
    use crate::nfe::{terms_up_to_weight, NfeTerm, Sign};

    fn scope(a: usize, l: usize) -> Scope {
        Scope::new(a, l).unwrap()
    }

    fn b(name: Builtin) -> ListFunction {
        name.into()
    }

    #[test]
    fn map_examples() {
        let s = Scope::default();
        assert!(check_map_equivariant(&ListFunction::reverse(), s)
            .unwrap()
            .passed());
        assert!(check_map_equivariant(&b(Builtin::Triangle), s)
            .unwrap()
            .passed());
        let sort = check_map_equivariant(&ListFunction::sort(), s).unwrap();
        assert_eq!(sort.verdict, Verdict::Fail);
        // first witness: shortest input, then first endo-map in table order
        let w = &sort.witnesses[0];
        assert_eq!(w.input, list(&[0, 1]));
        assert_eq!(w.transform, Transform::Map(EndoMap::new(list(&[1, 0, 0]))));
        assert_eq!(
            (w.lhs.clone(), w.rhs.clone()),
            (list(&[1, 0]), list(&[0, 1]))
        );
        // the swap (0 1) is among the witnesses on [0,1]
        assert!(sort.witnesses.iter().any(|w| w.input == list(&[0, 1])
            && w.transform == Transform::Map(EndoMap::new(list(&[1, 0, 2])))));
    }

    #[test]
    fn filter_examples() {
        let s = Scope::default();
        assert!(check_filter_equivariant(&ListFunction::reverse(), s)
            .unwrap()
            .passed());
        assert!(check_filter_equivariant(&ListFunction::sort(), s)
            .unwrap()
            .passed());
        let tri = check_filter_equivariant(&b(Builtin::Triangle), s).unwrap();
        assert!(!tri.passed());
        let keep_one = Transform::Filter(Predicate::new(list(&[1])));
        let w = tri
            .witnesses
            .iter()
            .find(|w| w.input == list(&[0, 1]) && w.transform == keep_one)
            .unwrap();
        assert_eq!(w.lhs, list(&[1, 1]));
        assert_eq!(w.rhs, list(&[1]));
        // the first witness found is on the shortest failing input
        assert_eq!(tri.witnesses[0].input.len(), 2);
    }

    #[test]
    fn tail_examples() {
        let s = Scope::default();
        let swap = ListFunction::map(list(&[1, 0, 2])).unwrap();
        assert!(check_tail_equivariant(&swap, s).unwrap().passed());
        assert!(!check_tail_equivariant(&ListFunction::reverse(), s)
            .unwrap()
            .passed());
        assert!(check_tail_equivariant(&drop_two_table(s), s)
            .unwrap()
            .passed());
    }

    #[test]
    fn no_new_values_examples() {
        let s = scope(3, 4);
        assert!(check_no_new_values(&ListFunction::sort(), s)
            .unwrap()
            .passed());
        assert!(check_no_new_values(&ListFunction::empty_const(), s)
            .unwrap()
            .passed());
        let zero = ListFunction::Table(TableFn::tabulate(s, |_| list(&[0])));
        let r = check_no_new_values(&zero, s).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.input == list(&[1])));
    }

    #[test]
    fn nfe_counts_examples() {
        let s = scope(3, 4);
        let r = check_nfe_counts(&ListFunction::reverse(), s).unwrap();
        assert!(r.passed());
        assert_eq!(r.inflation_factor, Some(1));
        let r = check_nfe_counts(&ListFunction::inflate(3), s).unwrap();
        assert_eq!((r.passed(), r.inflation_factor), (true, Some(3)));
        let rr = pointwise_concat(ListFunction::reverse(), ListFunction::reverse());
        let r = check_nfe_counts(&rr, s).unwrap();
        assert_eq!((r.passed(), r.inflation_factor), (true, Some(2)));
        let r = check_nfe_counts(&ListFunction::sort(), s).unwrap();
        assert_eq!(r.verdict, PropertyVerdict::PreconditionFailed);
    }

    #[test]
    fn fe_maps_empty_to_empty() {
        let s = scope(3, 4);
        let corpus = [
            ListFunction::reverse(),
            ListFunction::sort(),
            ListFunction::filter(list(&[1])),
            b(Builtin::SquareMultiplicity),
            b(Builtin::UniqueValues),
        ];
        for f in &corpus {
            assert!(check_filter_equivariant(f, s).unwrap().passed(), "{f}");
            assert!(f.apply(&[]).unwrap().is_empty());
        }
    }

    #[test]
    fn witnesses_are_sound() {
        let s = scope(3, 4);
        for f in [
            ListFunction::sort(),
            b(Builtin::Triangle),
            b(Builtin::SwapPairs),
            b(Builtin::SwapBlocks),
        ] {
            for law in Law::ALL {
                for w in check(&f, law, s).unwrap().witnesses {
                    assert!(w.confirms(&f).unwrap(), "{f} {law} {w:?}");
                }
            }
        }
    }

    #[test]
    fn failures_persist_at_larger_scopes() {
        let fs = [
            ListFunction::sort(),
            b(Builtin::Triangle),
            b(Builtin::SwapPairs),
            b(Builtin::SwapBlocks),
            ListFunction::reverse(),
            b(Builtin::UniqueValues),
        ];
        let small = [scope(2, 2), scope(2, 3), scope(3, 2)];
        let large = scope(3, 4);
        for f in &fs {
            for law in Law::ALL {
                let big_fails = !check(f, law, large).unwrap().passed();
                for s in small {
                    if !check(f, law, s).unwrap().passed() {
                        assert!(big_fails, "{f} {law} fails at {s:?} but not at {large:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn closure_under_concat_and_compose() {
        let s = scope(3, 4);
        let fes = [
            ListFunction::reverse(),
            ListFunction::sort(),
            ListFunction::filter(list(&[0, 2])),
            b(Builtin::SquareMultiplicity),
        ];
        for f in &fes {
            for g in &fes {
                for h in [
                    pointwise_concat(f.clone(), g.clone()),
                    compose(f.clone(), g.clone()),
                ] {
                    assert!(check_filter_equivariant(&h, s).unwrap().passed(), "{h}");
                }
            }
        }
    }

    #[test]
    fn nfe_terms_are_natural_and_filter_equivariant() {
        let s = scope(3, 4);
        for t in terms_up_to_weight(3) {
            let f: ListFunction = t.clone().into();
            assert!(check_map_equivariant(&f, s).unwrap().passed(), "{t}");
            assert!(check_filter_equivariant(&f, s).unwrap().passed(), "{t}");
            let r = check_nfe_counts(&f, s).unwrap();
            assert!(r.passed());
            assert_eq!(r.inflation_factor, Some(t.inflation_factor()));
        }
        let _ = NfeTerm::from_blocks([(Sign::Pos, 1)]).unwrap();
    }

    #[test]
    fn report_json_shape() {
        let r = check_filter_equivariant(&b(Builtin::Triangle), scope(2, 2)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["law"], "filter");
        assert_eq!(v["scope"]["alphabet"], 2);
        assert_eq!(v["witnesses"][0]["transform"]["kind"], "filter");
        let back: EquivarianceReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}

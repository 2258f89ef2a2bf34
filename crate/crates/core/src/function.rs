//! Closed, evaluable descriptions of list functions.
//!
//! A [`ListFunction`] is data rather than code, so it can be compared,
//! enumerated and serialised. Extensional equality is only ever claimed at a
//! [`Scope`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lists::{self, Elem};
use crate::nfe::{self, NfeTerm};
use crate::scope::Scope;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Identity,
    Reverse,
    /// Stable numeric sort.
    Sort,
    Triangle,
    SwapPairs,
    SwapBlocks,
    UniqueValues,
    /// `identity ++ identity`.
    Double,
    /// The constant function returning `[]`.
    EmptyConst,
    /// For each distinct value, in first-occurrence order, emit (count)^2
    /// copies of it.
    SquareMultiplicity,
}

impl Builtin {
    pub const ALL: [Builtin; 10] = [
        Builtin::Identity,
        Builtin::Reverse,
        Builtin::Sort,
        Builtin::Triangle,
        Builtin::SwapPairs,
        Builtin::SwapBlocks,
        Builtin::UniqueValues,
        Builtin::Double,
        Builtin::EmptyConst,
        Builtin::SquareMultiplicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Identity => "identity",
            Builtin::Reverse => "reverse",
            Builtin::Sort => "sort",
            Builtin::Triangle => "triangle",
            Builtin::SwapPairs => "swap_pairs",
            Builtin::SwapBlocks => "swap_blocks",
            Builtin::UniqueValues => "unique_values",
            Builtin::Double => "double",
            Builtin::EmptyConst => "empty_const",
            Builtin::SquareMultiplicity => "square_multiplicity",
        }
    }

    fn apply(self, xs: &[Elem]) -> Vec<Elem> {
        match self {
            Builtin::Identity => xs.to_vec(),
            Builtin::Reverse => lists::reverse(xs),
            Builtin::Sort => lists::sort_list(Ord::cmp, xs),
            Builtin::Triangle => lists::triangle(xs),
            Builtin::SwapPairs => lists::swap_pairs(xs),
            Builtin::SwapBlocks => lists::swap_blocks(xs),
            Builtin::UniqueValues => lists::unique_values(xs),
            Builtin::Double => xs.iter().chain(xs).copied().collect(),
            Builtin::EmptyConst => Vec::new(),
            Builtin::SquareMultiplicity => crate::amalgamation::square_multiplicity(xs),
        }
    }
}

/// A predicate given by the set of elements it keeps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Predicate {
    keep: BTreeSet<Elem>,
}

impl Predicate {
    pub fn new(keep: impl IntoIterator<Item = Elem>) -> Self {
        Predicate {
            keep: keep.into_iter().collect(),
        }
    }

    pub fn keeps(&self, x: &Elem) -> bool {
        self.keep.contains(x)
    }

    pub fn kept(&self) -> &BTreeSet<Elem> {
        &self.keep
    }

    pub fn filter(&self, xs: &[Elem]) -> Vec<Elem> {
        lists::filter_list(|x| self.keeps(x), xs)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.keep.iter().map(|x| x.to_string()).collect();
        write!(f, "keep {{{}}}", items.join(","))
    }
}

/// A function from the alphabet `{0 .. n-1}` to itself, given by its table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "EndoMapRepr")]
pub struct EndoMap {
    table: Vec<Elem>,
}

#[derive(Deserialize)]
struct EndoMapRepr {
    table: Vec<Elem>,
}

impl TryFrom<EndoMapRepr> for EndoMap {
    type Error = Error;

    fn try_from(repr: EndoMapRepr) -> Result<Self> {
        let n = repr.table.len();
        if let Some(bad) = repr.table.iter().find(|y| y.index() >= n) {
            return Err(Error::UnmappedElement {
                elem: *bad,
                size: n,
            });
        }
        Ok(EndoMap { table: repr.table })
    }
}

impl EndoMap {
    /// Callers are expected to pass images inside `{0 .. table.len()-1}`.
    pub fn new(table: Vec<Elem>) -> Self {
        debug_assert!(table.iter().all(|y| y.index() < table.len()));
        EndoMap { table }
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn image(&self, x: Elem) -> Result<Elem> {
        self.table
            .get(x.index())
            .copied()
            .ok_or(Error::UnmappedElement {
                elem: x,
                size: self.table.len(),
            })
    }

    pub fn map(&self, xs: &[Elem]) -> Result<Vec<Elem>> {
        xs.iter().map(|x| self.image(*x)).collect()
    }
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.table.iter().map(|x| x.to_string()).collect();
        write!(f, "map [{}]", items.join(","))
    }
}

/// A finite function table, total over its declared scope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct TableFn {
    scope: Scope,
    entries: BTreeMap<Vec<Elem>, Vec<Elem>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct TableRepr {
    alphabet: usize,
    max_len: usize,
    entries: Vec<TableEntry>,
}

#[derive(Clone, Serialize, Deserialize)]
struct TableEntry {
    input: Vec<Elem>,
    output: Vec<Elem>,
}

impl TryFrom<TableRepr> for TableFn {
    type Error = Error;

    fn try_from(repr: TableRepr) -> Result<Self> {
        let scope = Scope::new(repr.alphabet, repr.max_len)?;
        let mut entries = BTreeMap::new();
        for e in repr.entries {
            if !scope.contains(&e.input) {
                return Err(Error::InvalidTable(format!(
                    "input {:?} lies outside the declared scope",
                    e.input
                )));
            }
            if entries.insert(e.input.clone(), e.output).is_some() {
                return Err(Error::InvalidTable(format!(
                    "duplicate input {:?}",
                    e.input
                )));
            }
        }
        TableFn::new(scope, entries)
    }
}

impl From<TableFn> for TableRepr {
    fn from(t: TableFn) -> Self {
        TableRepr {
            alphabet: t.scope.alphabet,
            max_len: t.scope.max_len,
            entries: t
                .entries
                .into_iter()
                .map(|(input, output)| TableEntry { input, output })
                .collect(),
        }
    }
}

impl TableFn {
    /// Fails unless `entries` covers exactly the lists of `scope`.
    pub fn new(scope: Scope, entries: BTreeMap<Vec<Elem>, Vec<Elem>>) -> Result<Self> {
        if let Some(extra) = entries.keys().find(|xs| !scope.contains(xs)) {
            return Err(Error::InvalidTable(format!(
                "input {extra:?} lies outside the declared scope"
            )));
        }
        if let Some(missing) = scope
            .lists()
            .into_iter()
            .find(|xs| !entries.contains_key(xs))
        {
            return Err(Error::InvalidTable(format!(
                "no entry for input {missing:?}"
            )));
        }
        Ok(TableFn { scope, entries })
    }

    /// Tabulates `f` over every list of `scope`.
    pub fn tabulate(scope: Scope, f: impl Fn(&[Elem]) -> Vec<Elem>) -> Self {
        let entries = scope
            .lists()
            .into_iter()
            .map(|xs| {
                let ys = f(&xs);
                (xs, ys)
            })
            .collect();
        TableFn { scope, entries }
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn lookup(&self, xs: &[Elem]) -> Result<Vec<Elem>> {
        self.entries
            .get(xs)
            .cloned()
            .ok_or_else(|| Error::OutOfScope { input: xs.to_vec() })
    }
}

/// The step function of a right fold, drawn from a closed catalog.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum AlphaStep {
    /// `x : acc`. Folds to the identity.
    Cons,
    /// `acc ++ [x]`. Folds to `reverse`.
    Snoc,
    /// Insert `x` before the first element not smaller than it. Folds to
    /// `sort`.
    Insert,
    /// `x : acc` when the predicate keeps `x`, else `acc`. Folds to
    /// `filter`.
    ConsIf(Predicate),
    /// `x : x : acc` when `acc` is empty, else `x : acc`. Folds to a function
    /// duplicating the last element, which is not filter-equivariant.
    ConsTwiceOnEmpty,
}

impl AlphaStep {
    pub fn step(&self, x: Elem, acc: &[Elem]) -> Vec<Elem> {
        match self {
            AlphaStep::Cons => cons(x, acc),
            AlphaStep::Snoc => {
                let mut out = acc.to_vec();
                out.push(x);
                out
            }
            AlphaStep::Insert => {
                let at = acc.iter().position(|y| x <= *y).unwrap_or(acc.len());
                let mut out = acc.to_vec();
                out.insert(at, x);
                out
            }
            AlphaStep::ConsIf(p) => {
                if p.keeps(&x) {
                    cons(x, acc)
                } else {
                    acc.to_vec()
                }
            }
            AlphaStep::ConsTwiceOnEmpty => {
                if acc.is_empty() {
                    vec![x, x]
                } else {
                    cons(x, acc)
                }
            }
        }
    }

    /// `foldr step [] xs`.
    pub fn fold(&self, xs: &[Elem]) -> Vec<Elem> {
        xs.iter()
            .rev()
            .fold(Vec::new(), |acc, x| self.step(*x, &acc))
    }
}

fn cons(x: Elem, acc: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(acc.len() + 1);
    out.push(x);
    out.extend_from_slice(acc);
    out
}

impl fmt::Display for AlphaStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaStep::Cons => f.write_str("cons"),
            AlphaStep::Snoc => f.write_str("snoc"),
            AlphaStep::Insert => f.write_str("insert"),
            AlphaStep::ConsIf(p) => write!(f, "cons_if({p})"),
            AlphaStep::ConsTwiceOnEmpty => f.write_str("cons_twice_on_empty"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ListFunction {
    Builtin {
        name: Builtin,
    },
    Inflate {
        n: usize,
    },
    Filter(Predicate),
    Map(EndoMap),
    Nfe(NfeTerm),
    Foldr {
        alpha: AlphaStep,
    },
    Table(TableFn),
    /// `f` after `g`.
    Compose {
        f: Box<ListFunction>,
        g: Box<ListFunction>,
    },
    /// `xs -> f xs ++ g xs`.
    Concat {
        f: Box<ListFunction>,
        g: Box<ListFunction>,
    },
}

impl From<Builtin> for ListFunction {
    fn from(name: Builtin) -> Self {
        ListFunction::Builtin { name }
    }
}

impl ListFunction {
    pub fn builtin(name: Builtin) -> Self {
        ListFunction::Builtin { name }
    }

    pub fn identity() -> Self {
        Builtin::Identity.into()
    }

    pub fn reverse() -> Self {
        Builtin::Reverse.into()
    }

    pub fn sort() -> Self {
        Builtin::Sort.into()
    }

    pub fn empty_const() -> Self {
        Builtin::EmptyConst.into()
    }

    pub fn inflate(n: usize) -> Self {
        ListFunction::Inflate { n }
    }

    pub fn filter(keep: impl IntoIterator<Item = Elem>) -> Self {
        ListFunction::Filter(Predicate::new(keep))
    }

    pub fn map(table: Vec<Elem>) -> Result<Self> {
        EndoMap::try_from(EndoMapRepr { table }).map(ListFunction::Map)
    }

    pub fn apply(&self, xs: &[Elem]) -> Result<Vec<Elem>> {
        match self {
            ListFunction::Builtin { name } => Ok(name.apply(xs)),
            ListFunction::Inflate { n } => Ok(lists::inflate(*n, xs)),
            ListFunction::Filter(p) => Ok(p.filter(xs)),
            ListFunction::Map(m) => m.map(xs),
            ListFunction::Nfe(term) => Ok(nfe::interpret(term, xs)),
            ListFunction::Foldr { alpha } => Ok(alpha.fold(xs)),
            ListFunction::Table(t) => t.lookup(xs),
            ListFunction::Compose { f, g } => f.apply(&g.apply(xs)?),
            ListFunction::Concat { f, g } => {
                let mut out = f.apply(xs)?;
                out.extend(g.apply(xs)?);
                Ok(out)
            }
        }
    }
}

impl fmt::Display for ListFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListFunction::Builtin { name } => f.write_str(name.name()),
            ListFunction::Inflate { n } => write!(f, "inflate {n}"),
            ListFunction::Filter(p) => write!(f, "filter ({p})"),
            ListFunction::Map(m) => write!(f, "{m}"),
            ListFunction::Nfe(term) => write!(f, "nfe {term}"),
            ListFunction::Foldr { alpha } => write!(f, "foldr {alpha} []"),
            ListFunction::Table(t) => {
                write!(f, "table(A={}, L={})", t.scope.alphabet, t.scope.max_len)
            }
            ListFunction::Compose { f: a, g: b } => write!(f, "({a} . {b})"),
            ListFunction::Concat { f: a, g: b } => write!(f, "({a} ++ {b})"),
        }
    }
}

/// `xs -> f xs ++ g xs`.
pub fn pointwise_concat(f: ListFunction, g: ListFunction) -> ListFunction {
    ListFunction::Concat {
        f: Box::new(f),
        g: Box::new(g),
    }
}

/// `f` after `g`.
pub fn compose(f: ListFunction, g: ListFunction) -> ListFunction {
    ListFunction::Compose {
        f: Box::new(f),
        g: Box::new(g),
    }
}

pub fn foldr_fe(alpha: AlphaStep) -> ListFunction {
    ListFunction::Foldr { alpha }
}

/// First list of `scope` on which `f` and `g` disagree.
pub fn first_disagreement(
    f: &ListFunction,
    g: &ListFunction,
    scope: Scope,
) -> Result<Option<Vec<Elem>>> {
    for xs in scope.lists() {
        if f.apply(&xs)? != g.apply(&xs)? {
            return Ok(Some(xs));
        }
    }
    Ok(None)
}

pub fn functions_equal_at_scope(f: &ListFunction, g: &ListFunction, scope: Scope) -> Result<bool> {
    Ok(first_disagreement(f, g, scope)?.is_none())
}

/// Which of the two right-fold conditions a violation breaks.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaCondition {
    /// `phi x = false`: `filter phi (alpha x acc) = filter phi acc`.
    Dropped,
    /// `phi x = true`: `filter phi (alpha x acc) = alpha x (filter phi acc)`.
    Kept,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaViolation {
    pub condition: AlphaCondition,
    pub x: Elem,
    pub acc: Vec<Elem>,
    pub predicate: Predicate,
    pub lhs: Vec<Elem>,
    pub rhs: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub scope: Scope,
    pub accumulators: usize,
    pub violations: Vec<AlphaViolation>,
}

impl AlphaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both right-fold conditions for every element, predicate and
/// accumulator at `scope`.
///
/// Accumulators range over the values the fold can actually produce, i.e.
/// `foldr alpha [] ys` for every `ys` in the scope. Both conditions are only
/// ever used at such accumulators when proving that the fold commutes with
/// `filter`.
pub fn alpha_condition_check(alpha: &AlphaStep, scope: Scope) -> AlphaReport {
    let accumulators: BTreeSet<Vec<Elem>> = scope.lists().iter().map(|ys| alpha.fold(ys)).collect();
    let predicates = scope.predicates();
    let mut violations = Vec::new();
    for acc in &accumulators {
        for x in scope.elems() {
            let stepped = alpha.step(x, acc);
            for phi in &predicates {
                let lhs = phi.filter(&stepped);
                let (condition, rhs) = if phi.keeps(&x) {
                    (AlphaCondition::Kept, alpha.step(x, &phi.filter(acc)))
                } else {
                    (AlphaCondition::Dropped, phi.filter(acc))
                };
                if lhs != rhs {
                    violations.push(AlphaViolation {
                        condition,
                        x,
                        acc: acc.clone(),
                        predicate: phi.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    AlphaReport {
        scope,
        accumulators: accumulators.len(),
        violations,
    }
}

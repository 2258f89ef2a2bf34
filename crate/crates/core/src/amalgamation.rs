//! Reconstructing a list, or the output of a filter-equivariant function,
//! from filtered pieces.
//!
//! A [`Collection`] holds one list per key. With single keys, the list for `x`
//! is a list with every `x` removed; [`decompose_pi`] builds one from a list and
//! [`amal`] inverts it by repeatedly taking the unique head all the other lists
//! agree on. With pair keys, the list for `{x, y}` keeps only `x` and `y`.
//!
//! [`extrapolate_fe`] uses this to compute `f xs` for a filter-equivariant `f`
//! knowing only `f` on the sublists of `xs` with two distinct values:
//!
//! - two distinct values: the only sublist is `xs` itself;
//! - three distinct values: the sublist keeping `{y, z}` is exactly `xs` with
//!   `x` removed, so a single-key [`amal`] applies directly;
//! - four or more: every round, each nonempty list votes for its head, the
//!   strict winner is emitted and removed from the lists it heads.
//!
//! Success always implies that the result, filtered down to each pair,
//! reproduces the given sublist outputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Debug};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lists::{self, TaggedElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollectionKey<T> {
    /// The list has every occurrence of this value removed.
    Without(T),
    /// The list keeps only these two values; always stored smaller first.
    Pair(T, T),
}

impl<T: Ord> CollectionKey<T> {
    pub fn pair(a: T, b: T) -> Self {
        if a <= b {
            CollectionKey::Pair(a, b)
        } else {
            CollectionKey::Pair(b, a)
        }
    }

    /// Whether the list under this key may contain `x`.
    fn admits(&self, x: &T) -> bool {
        match self {
            CollectionKey::Without(y) => y != x,
            CollectionKey::Pair(a, b) => a == x || b == x,
        }
    }
}

impl<T: fmt::Display> fmt::Display for CollectionKey<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollectionKey::Without(x) => write!(f, "without {x}"),
            CollectionKey::Pair(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

/// A complete family of filtered lists over a universe of values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collection<T: Ord> {
    universe: BTreeSet<T>,
    lists: BTreeMap<CollectionKey<T>, Vec<T>>,
}

impl<T: Clone + Ord + Debug> Collection<T> {
    /// Single-key collection; `lists[x]` must not contain `x` and every key
    /// of the universe must be present.
    pub fn single(universe: BTreeSet<T>, lists: BTreeMap<T, Vec<T>>) -> Result<Self> {
        let keys: BTreeSet<T> = lists.keys().cloned().collect();
        if keys != universe {
            return Err(Error::InvalidCollection(format!(
                "keys {keys:?} do not match the universe {universe:?}"
            )));
        }
        let lists = lists
            .into_iter()
            .map(|(x, l)| (CollectionKey::Without(x), l))
            .collect();
        Collection::validated(universe, lists)
    }

    /// Pair-key collection; the list for `{x, y}` may only contain `x` and
    /// `y`, and every unordered pair of the universe must be present.
    pub fn pairs(universe: BTreeSet<T>, lists: BTreeMap<(T, T), Vec<T>>) -> Result<Self> {
        let mut keyed = BTreeMap::new();
        for ((a, b), l) in lists {
            if a == b {
                return Err(Error::InvalidCollection(format!("degenerate pair {a:?}")));
            }
            if keyed.insert(CollectionKey::pair(a, b), l).is_some() {
                return Err(Error::InvalidCollection("duplicate pair key".into()));
            }
        }
        let expected = pair_keys(&universe).count();
        if keyed.len() != expected {
            return Err(Error::InvalidCollection(format!(
                "{} pair keys given, {} needed",
                keyed.len(),
                expected
            )));
        }
        Collection::validated(universe, keyed)
    }

    fn validated(universe: BTreeSet<T>, lists: BTreeMap<CollectionKey<T>, Vec<T>>) -> Result<Self> {
        for (key, l) in &lists {
            if let CollectionKey::Pair(a, b) = key {
                if !universe.contains(a) || !universe.contains(b) {
                    return Err(Error::InvalidCollection(format!(
                        "pair {key:?} is outside the universe"
                    )));
                }
            }
            if let Some(bad) = l.iter().find(|x| !key.admits(x) || !universe.contains(x)) {
                return Err(Error::InvalidCollection(format!(
                    "list under {key:?} contains {bad:?}"
                )));
            }
        }
        Ok(Collection { universe, lists })
    }

    pub fn universe(&self) -> &BTreeSet<T> {
        &self.universe
    }

    pub fn lists(&self) -> &BTreeMap<CollectionKey<T>, Vec<T>> {
        &self.lists
    }

    pub fn get(&self, key: &CollectionKey<T>) -> Option<&[T]> {
        self.lists.get(key).map(Vec::as_slice)
    }

    pub fn is_exhausted(&self) -> bool {
        self.lists.values().all(Vec::is_empty)
    }
}

fn pair_keys<T: Clone + Ord>(universe: &BTreeSet<T>) -> impl Iterator<Item = (T, T)> + '_ {
    universe.iter().enumerate().flat_map(move |(i, a)| {
        universe
            .iter()
            .skip(i + 1)
            .map(move |b| (a.clone(), b.clone()))
    })
}

fn universe_of<T: Clone + Ord>(xs: &[T]) -> BTreeSet<T> {
    xs.iter().cloned().collect()
}

/// `x -> filter (/= x) xs` for every `x` of `universe`.
pub fn pi_over<T: Clone + Ord + Debug>(universe: &BTreeSet<T>, xs: &[T]) -> Result<Collection<T>> {
    let lists = universe
        .iter()
        .map(|x| (x.clone(), lists::filter_list(|y| y != x, xs)))
        .collect();
    Collection::single(universe.clone(), lists)
}

/// `x -> filter (/= x) xs` for every distinct `x` in `xs`.
pub fn decompose_pi<T: Clone + Ord + Debug>(xs: &[T]) -> Collection<T> {
    pi_over(&universe_of(xs), xs).expect("filtered lists never contain their key")
}

/// `{x, y} -> filter (in {x, y}) xs` for every pair of distinct values in `xs`.
pub fn two_unique_sublists<T: Clone + Ord + Debug>(xs: &[T]) -> Result<Collection<T>> {
    let universe = universe_of(xs);
    if universe.len() < 3 {
        return Err(Error::UniverseTooSmall {
            found: universe.len(),
            needed: 3,
        });
    }
    let lists = pair_keys(&universe)
        .map(|(a, b)| {
            let kept = lists::filter_list(|y| *y == a || *y == b, xs);
            ((a, b), kept)
        })
        .collect();
    Collection::pairs(universe, lists)
}

/// The unique `x0` that heads every nonempty list able to contain it, if
/// there is exactly one such value heading at least one list.
pub fn is_amalgamable_step<T: Clone + Ord + Debug>(chi: &Collection<T>) -> Result<Option<T>> {
    if chi.universe.len() < 3 {
        return Err(Error::UniverseTooSmall {
            found: chi.universe.len(),
            needed: 3,
        });
    }
    Ok(unique_head(chi))
}

fn unique_head<T: Clone + Ord>(chi: &Collection<T>) -> Option<T> {
    let mut found = None;
    for x0 in &chi.universe {
        let mut heads_some = false;
        let consistent = chi.lists.iter().all(|(key, l)| {
            if !key.admits(x0) {
                return true;
            }
            match l.first() {
                None => true,
                Some(h) if h == x0 => {
                    heads_some = true;
                    true
                }
                Some(_) => false,
            }
        });
        if consistent && heads_some {
            if found.is_some() {
                return None;
            }
            found = Some(x0.clone());
        }
    }
    found
}

/// Drops the head of every nonempty list whose head is `x0`.
pub fn delta_step<T: Clone + Ord>(chi: &Collection<T>, x0: &T) -> Collection<T> {
    let lists = chi
        .lists
        .iter()
        .map(|(key, l)| {
            let l = match l.first() {
                Some(h) if h == x0 => l[1..].to_vec(),
                _ => l.clone(),
            };
            (key.clone(), l)
        })
        .collect();
    Collection {
        universe: chi.universe.clone(),
        lists,
    }
}

/// Rebuilds the list a collection was decomposed from.
pub fn amal<T: Clone + Ord + Debug>(chi: &Collection<T>) -> Result<Vec<T>> {
    amal_traced(chi).map(|(out, _)| out)
}

fn amal_traced<T: Clone + Ord + Debug>(chi: &Collection<T>) -> Result<(Vec<T>, Vec<VoteRound<T>>)> {
    if chi.universe.len() < 3 && !chi.is_exhausted() {
        return Err(Error::UniverseTooSmall {
            found: chi.universe.len(),
            needed: 3,
        });
    }
    let mut chi = chi.clone();
    let mut out = Vec::new();
    let mut rounds = Vec::new();
    while !chi.is_exhausted() {
        let x0 = unique_head(&chi).ok_or(Error::NoUniqueHead { round: out.len() })?;
        rounds.push(VoteRound::tally(&chi.lists, x0.clone()));
        chi = delta_step(&chi, &x0);
        out.push(x0);
    }
    Ok((out, rounds))
}

/// Outputs of a function on two-value sublists, keyed by the unordered pair
/// of values each sublist keeps.
///
/// Serialised as `[{"keep": [x, y], "output": [...]}, ...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublistTable<T: Ord> {
    entries: BTreeMap<(T, T), Vec<T>>,
}

impl<T: Ord> Default for SublistTable<T> {
    fn default() -> Self {
        SublistTable {
            entries: BTreeMap::new(),
        }
    }
}

impl<T: Clone + Ord + Debug> SublistTable<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `f` on the sublist keeping `a` and `b`. Fails if `a == b` or
    /// the pair is already present.
    pub fn insert(&mut self, a: T, b: T, output: Vec<T>) -> Result<()> {
        if a == b {
            return Err(Error::InvalidExample(format!(
                "a sublist key needs two distinct values, got {a:?} twice"
            )));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if self.entries.contains_key(&key) {
            return Err(Error::InvalidExample(format!("pair {key:?} given twice")));
        }
        self.entries.insert(key, output);
        Ok(())
    }

    pub fn get(&self, a: &T, b: &T) -> Option<&[T]> {
        let key = if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        self.entries.get(&key).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(T, T), &Vec<T>)> {
        self.entries.iter()
    }

    /// Tabulates `f` on every two-value sublist of `xs`.
    pub fn from_fn(xs: &[T], mut f: impl FnMut(&[T]) -> Vec<T>) -> Self {
        let universe = universe_of(xs);
        let entries = pair_keys(&universe)
            .map(|(a, b)| {
                let kept = lists::filter_list(|y| *y == a || *y == b, xs);
                let out = f(&kept);
                ((a, b), out)
            })
            .collect();
        SublistTable { entries }
    }

    /// Like [`SublistTable::from_fn`] for a fallible `f`.
    pub fn try_from_fn(xs: &[T], mut f: impl FnMut(&[T]) -> Result<Vec<T>>) -> Result<Self> {
        let mut err = None;
        let table = Self::from_fn(xs, |ys| match f(ys) {
            Ok(out) => out,
            Err(e) => {
                err.get_or_insert(e);
                Vec::new()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(table),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SublistEntry<T> {
    keep: [T; 2],
    output: Vec<T>,
}

impl<T: Clone + Ord + Serialize> Serialize for SublistTable<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<SublistEntry<T>> = self
            .entries
            .iter()
            .map(|((a, b), out)| SublistEntry {
                keep: [a.clone(), b.clone()],
                output: out.clone(),
            })
            .collect();
        entries.serialize(serializer)
    }
}

impl<'de, T: Clone + Ord + Debug + Deserialize<'de>> Deserialize<'de> for SublistTable<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<SublistEntry<T>>::deserialize(deserializer)?;
        let mut table = SublistTable::new();
        for SublistEntry {
            keep: [a, b],
            output,
        } in entries
        {
            table.insert(a, b, output).map_err(D::Error::custom)?;
        }
        Ok(table)
    }
}

/// One round of head selection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteRound<T> {
    /// How many nonempty lists each value heads, for values heading any.
    pub scores: Vec<(T, usize)>,
    pub winner: T,
    /// Nonempty lists whose key admits the winner.
    pub winner_lists: usize,
}

impl<T: Clone + Ord> VoteRound<T> {
    fn tally(lists: &BTreeMap<CollectionKey<T>, Vec<T>>, winner: T) -> Self {
        let scores = head_scores(lists.values());
        let winner_lists = lists
            .iter()
            .filter(|(k, l)| k.admits(&winner) && !l.is_empty())
            .count();
        VoteRound {
            scores: scores.into_iter().collect(),
            winner,
            winner_lists,
        }
    }
}

fn head_scores<'a, T: Clone + Ord + 'a>(
    lists: impl IntoIterator<Item = &'a Vec<T>>,
) -> BTreeMap<T, usize> {
    let mut scores = BTreeMap::new();
    for l in lists {
        if let Some(h) = l.first() {
            *scores.entry(h.clone()).or_insert(0) += 1;
        }
    }
    scores
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Two distinct values: the sublist is the whole input.
    Direct,
    /// Three distinct values: single-key amalgamation of the pair outputs.
    Nested,
    /// Four or more distinct values: majority vote over all pair outputs.
    OneShot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extrapolation<T> {
    pub method: Method,
    pub output: Vec<T>,
    pub rounds: Vec<VoteRound<T>>,
}

/// Computes `f xs` from `f` on every two-value sublist of `xs`.
pub fn extrapolate_fe<T: Clone + Ord + Debug>(table: &SublistTable<T>, xs: &[T]) -> Result<Vec<T>> {
    extrapolate_fe_traced(table, xs).map(|e| e.output)
}

/// [`extrapolate_fe`] together with the per-round scores.
pub fn extrapolate_fe_traced<T: Clone + Ord + Debug>(
    table: &SublistTable<T>,
    xs: &[T],
) -> Result<Extrapolation<T>> {
    let universe = universe_of(xs);
    if universe.len() < 2 {
        return Err(Error::UniverseTooSmall {
            found: universe.len(),
            needed: 2,
        });
    }
    let mut needed = BTreeMap::new();
    for (a, b) in pair_keys(&universe) {
        let out = table
            .get(&a, &b)
            .ok_or_else(|| Error::MissingSublist(format!("{{{a:?}, {b:?}}}")))?;
        if let Some(bad) = out.iter().find(|y| **y != a && **y != b) {
            return Err(Error::Inconsistent(format!(
                "output for {{{a:?}, {b:?}}} contains {bad:?}"
            )));
        }
        needed.insert((a, b), out.to_vec());
    }

    let (method, (output, rounds)) = if universe.len() == 2 {
        let only = needed.values().next().expect("one pair").clone();
        (Method::Direct, (only, Vec::new()))
    } else if universe.len() == 3 {
        // the sublist keeping {y, z} is xs without x
        let lists = universe
            .iter()
            .map(|x| {
                let mut rest = universe.iter().filter(|y| *y != x).cloned();
                let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
                (x.clone(), needed[&(a, b)].clone())
            })
            .collect();
        let chi = Collection::single(universe.clone(), lists)?;
        (Method::Nested, amal_traced(&chi)?)
    } else {
        let lists = needed
            .iter()
            .map(|((a, b), l)| (CollectionKey::Pair(a.clone(), b.clone()), l.clone()))
            .collect();
        (Method::OneShot, majority_vote(lists)?)
    };

    for ((a, b), expected) in &needed {
        let projected = lists::filter_list(|y| y == a || y == b, &output);
        if &projected != expected {
            return Err(Error::Inconsistent(format!(
                "reconstruction {output:?} restricted to {{{a:?}, {b:?}}} gives {projected:?}, not {expected:?}"
            )));
        }
    }
    Ok(Extrapolation {
        method,
        output,
        rounds,
    })
}

fn majority_vote<T: Clone + Ord + Debug>(
    mut lists: BTreeMap<CollectionKey<T>, Vec<T>>,
) -> Result<(Vec<T>, Vec<VoteRound<T>>)> {
    let mut out = Vec::new();
    let mut rounds = Vec::new();
    while lists.values().any(|l| !l.is_empty()) {
        let scores = head_scores(lists.values());
        let best = scores.values().copied().max().unwrap_or(0);
        let mut leaders = scores.iter().filter(|(_, s)| **s == best);
        let winner = match (leaders.next(), leaders.next()) {
            (Some((x, _)), None) => x.clone(),
            _ => return Err(Error::NoUniqueHead { round: out.len() }),
        };
        rounds.push(VoteRound::tally(&lists, winner.clone()));
        for l in lists.values_mut() {
            if l.first() == Some(&winner) {
                l.remove(0);
            }
        }
        out.push(winner);
    }
    Ok((out, rounds))
}

/// Extrapolates a natural filter-equivariant function from its value on a
/// single list of two distinct values.
///
/// Every other two-value input `[p, q]` is `map g [x, y]` for `g x = p`,
/// `g y = q`, so its output is `map g example_out`. Inputs with repeated
/// values are first made distinct by tagging with positions.
pub fn extrapolate_nfe_from_doubleton<T: Clone + Ord + Debug>(
    example_in: &[T],
    example_out: &[T],
    xs: &[T],
) -> Result<Vec<T>> {
    let x = doubleton_first(example_in, example_out)?;
    if lists::unique_values(xs).len() < xs.len() {
        let tagged = lists::enumerate(xs);
        let out = extrapolate_distinct(x, example_out, &tagged)?;
        Ok(lists::unenumerate(&out))
    } else {
        extrapolate_distinct(x, example_out, xs)
    }
}

/// [`extrapolate_nfe_from_doubleton`] on position-tagged values, with the
/// per-round scores. Needs at least three elements in `xs`.
pub fn extrapolate_nfe_traced<T: Clone + Ord + Debug>(
    example_in: &[T],
    example_out: &[T],
    xs: &[T],
) -> Result<Extrapolation<TaggedElem<T>>> {
    let x = doubleton_first(example_in, example_out)?;
    let tagged = lists::enumerate(xs);
    let table = doubleton_table(x, example_out, &tagged)?;
    extrapolate_fe_traced(&table, &tagged)
}

fn doubleton_first<'a, T: PartialEq + Debug>(
    example_in: &'a [T],
    example_out: &[T],
) -> Result<&'a T> {
    let (x, y) = match example_in {
        [x, y] if x != y => (x, y),
        _ => {
            return Err(Error::InvalidExample(format!(
                "expected two distinct values, got {example_in:?}"
            )))
        }
    };
    if let Some(bad) = example_out.iter().find(|v| *v != x && *v != y) {
        return Err(Error::InvalidExample(format!(
            "example output contains {bad:?}, which is not in the input"
        )));
    }
    Ok(x)
}

fn relabel<T: PartialEq, U: Clone>(x: &T, example_out: &[T], p: &U, q: &U) -> Vec<U> {
    example_out
        .iter()
        .map(|v| if v == x { p.clone() } else { q.clone() })
        .collect()
}

/// `[p, q] = map g [x, y]`, so `f [p, q] = map g (f [x, y])`.
fn doubleton_table<T, U>(x: &T, example_out: &[T], xs: &[U]) -> Result<SublistTable<U>>
where
    T: PartialEq,
    U: Clone + Ord + Debug,
{
    let mut table = SublistTable::new();
    for (i, p) in xs.iter().enumerate() {
        for q in &xs[i + 1..] {
            table.insert(p.clone(), q.clone(), relabel(x, example_out, p, q))?;
        }
    }
    Ok(table)
}

fn extrapolate_distinct<T, U>(x: &T, example_out: &[T], xs: &[U]) -> Result<Vec<U>>
where
    T: PartialEq,
    U: Clone + Ord + Debug,
{
    match xs {
        [] => Ok(Vec::new()),
        // f [p] = map (const p) (filter (== x) (f [x, y]))
        [p] => Ok(example_out
            .iter()
            .filter(|v| *v == x)
            .map(|_| p.clone())
            .collect()),
        [p, q] => Ok(relabel(x, example_out, p, q)),
        _ => extrapolate_fe(&doubleton_table(x, example_out, xs)?, xs),
    }
}

/// For each distinct value in first-occurrence order, `count^2` copies of it.
///
/// Filter-equivariant, and the identity on every list of distinct values, so
/// its behaviour on two-value inputs without repeats says nothing about
/// longer inputs.
pub fn square_multiplicity<T: Clone + PartialEq>(xs: &[T]) -> Vec<T> {
    lists::unique_values(xs)
        .into_iter()
        .flat_map(|x| {
            let c = lists::count(&x, xs);
            lists::repeat_elem(c * c, &x)
        })
        .collect()
}

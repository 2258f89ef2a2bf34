//! List combinators.
//!
//! Everything here is generic over the element type and only needs `Clone`
//! and, where values are compared, `PartialEq`. The concrete alphabet used by
//! the checkers is [`Elem`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the finite alphabet `{0 .. A-1}`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for Elem {
    fn from(value: u32) -> Self {
        Elem(value)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A value paired with its original position.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TaggedElem<T> {
    pub value: T,
    pub index: usize,
}

pub fn map_list<T, U>(psi: impl Fn(&T) -> U, xs: &[T]) -> Vec<U> {
    xs.iter().map(psi).collect()
}

pub fn filter_list<T: Clone>(phi: impl Fn(&T) -> bool, xs: &[T]) -> Vec<T> {
    xs.iter().filter(|x| phi(x)).cloned().collect()
}

pub fn reverse<T: Clone>(xs: &[T]) -> Vec<T> {
    xs.iter().rev().cloned().collect()
}

/// Drops the first element. The tail of `[]` is an error rather than `[]`.
pub fn tail<T: Clone>(xs: &[T]) -> Result<Vec<T>> {
    match xs.split_first() {
        Some((_, rest)) => Ok(rest.to_vec()),
        None => Err(Error::EmptyList),
    }
}

pub fn repeat_elem<T: Clone>(n: usize, x: &T) -> Vec<T> {
    vec![x.clone(); n]
}

/// Replaces every element by `n` adjacent copies of itself.
pub fn inflate<T: Clone>(n: usize, xs: &[T]) -> Vec<T> {
    xs.iter().flat_map(|x| repeat_elem(n, x)).collect()
}

/// Repeats the element at 1-based position `i` exactly `i` times.
pub fn triangle<T: Clone>(xs: &[T]) -> Vec<T> {
    xs.iter()
        .enumerate()
        .flat_map(|(i, x)| repeat_elem(i + 1, x))
        .collect()
}

/// Distinct values in first-occurrence order.
pub fn unique_values<T: Clone + PartialEq>(xs: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in xs {
        if !out.contains(x) {
            out.push(x.clone());
        }
    }
    out
}

pub fn enumerate<T: Clone>(xs: &[T]) -> Vec<TaggedElem<T>> {
    xs.iter()
        .enumerate()
        .map(|(index, value)| TaggedElem {
            value: value.clone(),
            index,
        })
        .collect()
}

pub fn unenumerate<T: Clone>(ts: &[TaggedElem<T>]) -> Vec<T> {
    ts.iter().map(|t| t.value.clone()).collect()
}

/// Stable sort under `cmp`.
pub fn sort_list<T: Clone>(cmp: impl Fn(&T, &T) -> Ordering, xs: &[T]) -> Vec<T> {
    let mut out = xs.to_vec();
    out.sort_by(cmp);
    out
}

/// Exchanges positions `2i` and `2i+1`; an odd trailing element stays put.
pub fn swap_pairs<T: Clone>(xs: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len());
    for chunk in xs.chunks(2) {
        out.extend(chunk.iter().rev().cloned());
    }
    out
}

/// Second half followed by first half. The first half has `ceil(n/2)` elements.
pub fn swap_blocks<T: Clone>(xs: &[T]) -> Vec<T> {
    let (first, second) = xs.split_at(xs.len().div_ceil(2));
    second.iter().chain(first).cloned().collect()
}

/// Number of occurrences of `x` in `xs`.
pub fn count<T: PartialEq>(x: &T, xs: &[T]) -> usize {
    xs.iter().filter(|y| *y == x).count()
}

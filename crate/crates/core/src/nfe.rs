//! Natural filter-equivariant functions as data.
//!
//! Every NFE is a concatenation of blocks, each block being either
//! `inflate n` or `reverse . inflate n` with `n >= 1`. [`NfeTerm`] stores that
//! block list directly; [`Nfe`] is the equivalent inductive form
//! `Z | P n rest | N n rest`, and the two convert into each other losslessly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equivariance::{self, PropertyReport, PropertyViolation};
use crate::error::{Error, Result};
use crate::function::ListFunction;
use crate::lists::{self, Elem};
use crate::scope::Scope;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    /// `inflate n`
    #[serde(rename = "P")]
    Pos,
    /// `reverse . inflate n`
    #[serde(rename = "N")]
    Neg,
}

/// One summand of an NFE. Serialised as `["P", 2]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(Sign, usize)", into = "(Sign, usize)")]
pub struct Block {
    sign: Sign,
    size: usize,
}

impl Block {
    pub fn new(sign: Sign, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidBlock);
        }
        Ok(Block { sign, size })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

impl TryFrom<(Sign, usize)> for Block {
    type Error = Error;

    fn try_from((sign, size): (Sign, usize)) -> Result<Self> {
        Block::new(sign, size)
    }
}

impl From<Block> for (Sign, usize) {
    fn from(b: Block) -> Self {
        (b.sign, b.size)
    }
}

/// An NFE as a list of blocks; the empty list is the constant `[]` function.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NfeTerm {
    blocks: Vec<Block>,
}

impl NfeTerm {
    pub fn zero() -> Self {
        NfeTerm::default()
    }

    pub fn new(blocks: Vec<Block>) -> Self {
        NfeTerm { blocks }
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = (Sign, usize)>) -> Result<Self> {
        blocks
            .into_iter()
            .map(Block::try_from)
            .collect::<Result<Vec<_>>>()
            .map(NfeTerm::new)
    }

    pub fn to_blocks(&self) -> Vec<(Sign, usize)> {
        self.blocks.iter().map(|b| (b.sign, b.size)).collect()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Length of the output on a singleton input.
    pub fn inflation_factor(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn to_inductive(&self) -> Nfe {
        self.blocks
            .iter()
            .rev()
            .fold(Nfe::Z, |rest, b| match b.sign {
                Sign::Pos => Nfe::P(b.size, Box::new(rest)),
                Sign::Neg => Nfe::N(b.size, Box::new(rest)),
            })
    }

    pub fn from_inductive(term: &Nfe) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut cur = term;
        loop {
            match cur {
                Nfe::Z => return Ok(NfeTerm { blocks }),
                Nfe::P(n, rest) => {
                    blocks.push(Block::new(Sign::Pos, *n)?);
                    cur = rest;
                }
                Nfe::N(n, rest) => {
                    blocks.push(Block::new(Sign::Neg, *n)?);
                    cur = rest;
                }
            }
        }
    }
}

impl fmt::Display for NfeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_inductive().fmt(f)
    }
}

impl From<NfeTerm> for ListFunction {
    fn from(term: NfeTerm) -> Self {
        ListFunction::Nfe(term)
    }
}

/// Inductive presentation of an NFE term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Nfe {
    Z,
    P(usize, Box<Nfe>),
    N(usize, Box<Nfe>),
}

impl fmt::Display for Nfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nfe::Z => f.write_str("Z"),
            Nfe::P(n, rest) | Nfe::N(n, rest) => {
                let c = if matches!(self, Nfe::P(..)) { 'P' } else { 'N' };
                match **rest {
                    Nfe::Z => write!(f, "{c} {n} Z"),
                    _ => write!(f, "{c} {n} ({rest})"),
                }
            }
        }
    }
}

/// Evaluates a term: each block contributes `inflate n xs` (or its reverse),
/// and block outputs are concatenated left to right.
pub fn interpret<T: Clone>(term: &NfeTerm, xs: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(term.inflation_factor() * xs.len());
    for b in &term.blocks {
        let inflated = lists::inflate(b.size, xs);
        match b.sign {
            Sign::Pos => out.extend(inflated),
            Sign::Neg => out.extend(inflated.into_iter().rev()),
        }
    }
    out
}

/// Compositions of `k` into exactly `parts` positive parts, lexicographic.
fn compositions(k: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=k.saturating_sub(parts - 1) {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All NFEs with inflation factor `k`: compositions of `k` ordered by number
/// of blocks then block sizes, each decorated with every sign pattern
/// (`P` before `N`). `k = 0` gives just the empty term.
pub fn enumerate_k_nfes(k: usize) -> Vec<NfeTerm> {
    if k == 0 {
        return vec![NfeTerm::zero()];
    }
    let mut out = Vec::new();
    for parts in 1..=k {
        for sizes in compositions(k, parts) {
            for signs in 0u64..1 << parts {
                // most significant bit is the first block, so P..P comes first
                let blocks = sizes
                    .iter()
                    .enumerate()
                    .map(|(i, &size)| Block {
                        sign: if signs >> (parts - 1 - i) & 1 == 0 {
                            Sign::Pos
                        } else {
                            Sign::Neg
                        },
                        size,
                    })
                    .collect();
                out.push(NfeTerm { blocks });
            }
        }
    }
    out
}

/// Closed form for the number of `k`-NFEs: `2 * 3^(k-1)`, and 1 for `k = 0`.
pub fn count_k_nfes(k: u32) -> u128 {
    match k {
        0 => 1,
        _ => 2 * 3u128.pow(k - 1),
    }
}

/// All terms with inflation factor at most `max_weight`.
pub fn terms_up_to_weight(max_weight: usize) -> Vec<NfeTerm> {
    (0..=max_weight).flat_map(enumerate_k_nfes).collect()
}

/// `counts[x][n]` is the length of `f (repeat n x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceFn {
    pub scope: Scope,
    pub counts: Vec<Vec<usize>>,
}

impl OccurrenceFn {
    pub fn get(&self, x: Elem, n: usize) -> Option<usize> {
        self.counts.get(x.index())?.get(n).copied()
    }
}

pub fn compute_occurrence(f: &ListFunction, scope: Scope) -> Result<OccurrenceFn> {
    let counts = scope
        .elems()
        .map(|x| {
            (0..=scope.max_len)
                .map(|n| Ok(f.apply(&lists::repeat_elem(n, &x))?.len()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OccurrenceFn { scope, counts })
}

/// Checks that `f xs` has exactly `Phi(x, n)` copies of each `x` occurring
/// `n` times in `xs`, where `Phi` is tabulated from `f` on constant lists.
/// Requires `f` to pass the filter check at `scope`.
pub fn check_multiset_profile(f: &ListFunction, scope: Scope) -> Result<PropertyReport> {
    const NAME: &str = "multiset_profile";
    let fe = equivariance::check_filter_equivariant(f, scope)?;
    if !fe.passed() {
        return Ok(PropertyReport::precondition_failed(
            NAME,
            scope,
            "function fails the filter-equivariance check",
        ));
    }
    let phi = compute_occurrence(f, scope)?;
    let mut violations = Vec::new();
    for xs in scope.lists() {
        let ys = f.apply(&xs)?;
        for x in scope.elems() {
            let n = lists::count(&x, &xs);
            let expected = phi.get(x, n).unwrap_or(0);
            let got = lists::count(&x, &ys);
            if got != expected {
                violations.push(PropertyViolation {
                    input: xs.clone(),
                    output: ys.clone(),
                    message: format!(
                        "{x} occurs {n} times in the input and {got} times in the output, expected {expected}"
                    ),
                });
            }
        }
    }
    Ok(PropertyReport::from_violations(NAME, scope, violations))
}

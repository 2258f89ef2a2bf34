//! Symmetries of list functions.
//!
//! This crate works with functions `f : [a] -> [a]` and the two families of
//! transformations they may commute with: `map psi` (relabelling elements) and
//! `filter phi` (removing elements). A function that commutes with every
//! `filter phi` is *filter-equivariant* (FE); one that additionally commutes
//! with every `map psi` is a *natural* filter-equivariant function (NFE).
//!
//! The modules are layered bottom-up:
//!
//! - [`lists`]: the plain list combinators everything else is written in.
//! - [`function`]: [`ListFunction`], a closed and serialisable description of
//!   a list function, with its two monoid structures and the right-fold
//!   constructor.
//! - [`equivariance`]: exhaustive finite-scope checkers for map-, filter- and
//!   tail-equivariance and for the counting lemmas.
//! - [`nfe`]: the block-list representation of NFEs, its interpreter and
//!   enumeration, and the occurrence function of an FE.
//! - [`simplicial`]: permutation families extracted from NFEs and their
//!   coherence under deletion.
//! - [`amalgamation`]: reconstructing `f xs` from `f` on the sublists of `xs`
//!   that keep two distinct values.
//!
//! Every universally quantified statement is checked over a finite [`Scope`]
//! (all lists up to a length over a small alphabet). A passing report means
//! "passes at this scope" and nothing stronger.
//!
//! ```
//! use listsym::{extrapolate_fe, list, ListFunction, Scope, SublistTable};
//! use listsym::equivariance::check_filter_equivariant;
//!
//! let sort = ListFunction::sort();
//! assert!(check_filter_equivariant(&sort, Scope::default()).unwrap().passed());
//!
//! let xs = list(&[3, 2, 1, 2]);
//! let table = SublistTable::try_from_fn(&xs, |ys| sort.apply(ys)).unwrap();
//! assert_eq!(extrapolate_fe(&table, &xs).unwrap(), list(&[1, 2, 2, 3]));
//! ```

pub mod amalgamation;
pub mod equivariance;
mod error;
pub mod function;
pub mod lists;
pub mod nfe;
pub mod scope;
pub mod simplicial;

pub use amalgamation::{
    amal, decompose_pi, delta_step, extrapolate_fe, extrapolate_fe_traced,
    extrapolate_nfe_from_doubleton, extrapolate_nfe_traced, is_amalgamable_step, pi_over,
    square_multiplicity, two_unique_sublists, Collection, CollectionKey, Extrapolation, Method,
    SublistTable, VoteRound,
};
pub use equivariance::{EquivarianceReport, Law, PropertyReport, Verdict};
pub use error::{Error, Result};
pub use function::{AlphaStep, Builtin, EndoMap, ListFunction, Predicate, TableFn};
pub use lists::{Elem, TaggedElem};
pub use nfe::{Block, Nfe, NfeTerm, OccurrenceFn, Sign};
pub use scope::Scope;
pub use simplicial::{Inclusion, PermFamily, Permutation};

/// Builds a list of [`Elem`]s from raw integers.
pub fn list(values: &[u32]) -> Vec<Elem> {
    values.iter().copied().map(Elem).collect()
}

use thiserror::Error;

use crate::lists::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tail of an empty list")]
    EmptyList,

    #[error("input {input:?} is outside the scope of a table function")]
    OutOfScope { input: Vec<Elem> },

    #[error("element {elem} has no image under an endo-map of size {size}")]
    UnmappedElement { elem: Elem, size: usize },

    #[error("invalid scope: {0}")]
    InvalidScope(String),

    #[error("scope too large: {0}")]
    ScopeTooLarge(String),

    #[error("invalid table function: {0}")]
    InvalidTable(String),

    #[error("NFE block sizes must be at least 1")]
    InvalidBlock,

    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid inclusion: {0}")]
    InvalidInclusion(String),

    #[error("invalid permutation family: {0}")]
    InvalidFamily(String),

    #[error("function is not an NFE: {0}")]
    NotAnNfe(String),

    #[error("universe has {found} unique values, at least {needed} are required")]
    UniverseTooSmall { found: usize, needed: usize },

    #[error("invalid collection: {0}")]
    InvalidCollection(String),

    #[error("no sublist output given for the pair {0}")]
    MissingSublist(String),

    #[error("no unique head in amalgamation round {round}")]
    NoUniqueHead { round: usize },

    #[error("sublist outputs are inconsistent with any filter-equivariant function: {0}")]
    Inconsistent(String),

    #[error("invalid example: {0}")]
    InvalidExample(String),
}

impl Error {
    /// True for failures that mean "the data does not amalgamate", as opposed
    /// to malformed input.
    pub fn is_amalgamation_failure(&self) -> bool {
        matches!(
            self,
            Error::NoUniqueHead { .. }
                | Error::Inconsistent(_)
                | Error::MissingSublist(_)
                | Error::UniverseTooSmall { .. }
                | Error::InvalidExample(_)
        )
    }
}

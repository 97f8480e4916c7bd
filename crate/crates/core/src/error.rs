use std::fmt;

use thiserror::Error;

/// Group axiom that a Cayley table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    RowPermutation,
    ColumnPermutation,
    Identity,
    Associativity,
    Inverse,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::RowPermutation => "row is not a permutation",
            Axiom::ColumnPermutation => "column is not a permutation",
            Axiom::Identity => "element 0 is not the identity",
            Axiom::Associativity => "associativity",
            Axiom::Inverse => "two-sided inverse",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a group: {axiom} (witness {witness:?})")]
    NotAGroup { axiom: Axiom, witness: Vec<usize> },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("group of order {0} is not a p-group")]
    NotAPGroup(usize),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("not bifree: {0}")]
    NotBifree(String),

    #[error("stabilization precondition violated: {first} and {second} are fusion-conjugate with fixed counts {first_count} != {second_count}")]
    PreconditionViolated {
        first: String,
        second: String,
        first_count: String,
        second_count: String,
    },

    #[error("subgroup collection is not closed: {0}")]
    HNotClosed(String),

    #[error("not a biset: {0}")]
    NotABiset(String),

    #[error("explicit biset has {size} points, above the search bound {bound}")]
    TooLarge { size: usize, bound: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;

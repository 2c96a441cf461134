//! Finite permutation groups small enough to list every element.

mod group;
mod morphism;
mod permutation;
mod words;

pub use group::{ConjugacyWitness, PermGroup, DEFAULT_ELEMENT_CAP};
pub use morphism::{
    automorphisms, automorphisms_with_cap, direct_product, find_isomorphism, is_isomorphic, GroupMap, DEFAULT_AUTOMORPHISM_CAP,
};
pub use permutation::Permutation;
pub use words::{evaluate, express_as_word, WordSearch};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("cannot parse permutation `{0}`")]
    Parse(String),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("element cap of {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("element is not in the subgroup generated by the given elements")]
    NotInSubgroup,
}

//! Finitely presented groups: words, presentations, coset enumeration,
//! Reidemeister–Schreier rewriting, Tietze simplification and abelian invariants.

mod coset;
mod presentation;
mod rs;
mod snf;
mod tietze;
mod word;

pub use coset::{check_epimorphism, coset_table_from_hom, todd_coxeter, CosetTable, DEFAULT_COSET_LIMIT};
pub use presentation::{
    abelian_invariants, direct_product_presentation, parse_word, polygonal_presentation, Presentation,
};
pub use rs::{reidemeister_schreier, Rewriter, SubgroupPresentation};
pub use snf::{convert_matrix, smith_diagonal, smith_normal_form, AbelianInvariants, Matrix, ParseAbelianError};
pub use tietze::{quotient_and_simplify, simplify};
pub use word::{free_reduce, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("coset enumeration exceeded {limit} cosets")]
    CosetLimitExceeded { limit: usize },
    #[error("coset table is incomplete or inconsistent")]
    IncompleteTable,
    #[error("word does not lie in the subgroup")]
    WordNotInSubgroup,
    #[error("generator images do not satisfy the relators")]
    NotAHomomorphism,
    #[error("a generator image has the wrong order")]
    NotAppropriate,
    #[error("generator images do not generate the group")]
    NotSurjective,
}

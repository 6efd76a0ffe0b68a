//! The dual Hochschild complex `(+)_n s^{n-2} N(n)` for three coefficient
//! modules: dihedral cohomology, open cohomology and its associated graded.
//! The differential cuts corners of the polygon.

mod complex;
mod h0;

pub use complex::{basis, corner_chords, corner_cut, cut_monomial, face, verify_complex, ComplexElement, Module, VerifyReport};
pub use h0::{
    conjecture_check, h0, lemma_triviality_check, lyndon_23_count, onto_check, ConjectureRow, H0Options, H0Report, LemmaReport,
    OntoReport,
};

use moduli_cohomology::ModuliError;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum HochError {
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error(transparent)]
    Polygon(#[from] polygon_combinatorics::PolygonError),
    #[error("{module:?} element at arity {arity} has a term outside the basis: {term}")]
    Support { module: Module, arity: usize, term: String },
    #[error("arity {n} needs the slow flag")]
    Slow { n: usize },
    #[error("arity {n} is too small here")]
    Arity { n: usize },
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

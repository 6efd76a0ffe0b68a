//! Free Lie algebras in Lyndon coordinates and finite-weight models of the
//! braid Lie algebras `t(n)`, `p(n)`, `d(n)` and `rb(n)`.

pub mod braid;
pub mod free;
pub mod grt;
pub mod lyndon;
pub mod presented;
pub mod rb;
pub mod word;

pub use braid::{chord_index, chords, d_alphabet, d_to_p, p_alphabet, p_to_d, pairs, Kind, TAlg, TElement, TModel};
pub use free::{alphabet, lie_normal_form, lyndon_basis, parse_word, Expr, Free, LieAlgebra, LieElement, LieJson};
pub use grt::{
    eulerian, eulerian_apply, group_add, group_apply, group_identity, group_mul, ihara_bracket, ihara_derivation,
    pentagon_d_form, pentagon_defect, pentagon_t_form, permute, solve_grt, symmetry_defects, xy, Equation, GroupElement,
    ALL_EQUATIONS,
};
pub use presented::{t_presented, Presented};
pub use rb::{
    cabled_twist, dihedral_action, dihedral_coboundary, discrepancy, glue_chord, literal_d_diagnostics, literal_d_relations,
    rb_alphabet, RbModel, DEFAULT_RB_MAX_N, DEFAULT_RB_MAX_WEIGHT,
};
pub use lyndon::{is_lyndon, lyndon_words, witt};

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum LieError {
    #[error("word {0:?} is not a Lyndon word over the alphabet")]
    NotLyndon(String),
    #[error("polynomial is not a Lie element (leading word {0:?})")]
    NotLie(String),
    #[error("alphabets do not match")]
    Alphabet,
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("bad index: {0}")]
    Index(String),
    #[error("consistency check failed: {0}")]
    Mismatch(String),
    #[error("weight cap exceeded: {0}")]
    Cap(String),
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

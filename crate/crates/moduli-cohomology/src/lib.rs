//! Forms on M_0(n) written in chord diagrams.
//!
//! `H*(M_0(n))` is the graded-commutative algebra on the chord classes
//! `alpha_c` modulo the quadratic relations `(sum_A alpha)(sum_B alpha) = 0`
//! for Galois-closed crossing pairs. Gravity diagrams form a basis and prime
//! gravity diagrams span the dihedral subalgebra.

mod arnold;
mod cache;
mod form;
mod ops;
mod relations;

pub use arnold::{nbc_vector, ArnoldContext};
pub use cache::{arnold_context, relation_context, DEFAULT_MONOMIAL_CAP};
pub use form::{Form, FormJson, TensorForm, TermJson};
pub use ops::{
    cohomology_dims, graded_reg_restrict, normal_form, normal_form_with, pullback, reg_monomial, reg_restrict, regularise,
    residual_weight, residue, DimRow, Engine, Space,
};
pub use relations::{relation_vectors, RelationContext};

use polygon_combinatorics::PolygonError;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModuliError {
    #[error("resource cap exceeded at (n={n}, degree={degree}): {size} > {cap}")]
    Cap { n: usize, degree: usize, size: usize, cap: usize },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("forms do not match: {0}")]
    Mismatch(String),
    #[error("side index {i} out of range for arity {n}")]
    Side { i: usize, n: usize },
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

//! Exact linear algebra over `Q` with sparse rows.
//!
//! Everything that needs a rank, a kernel or a normal form modulo a span goes
//! through this crate, so all numbers are `BigRational` and no floating point
//! is involved anywhere.

pub mod echelon;
pub mod exec;
pub mod matrix;
pub mod rational;
pub mod sparse;

pub use echelon::Echelon;
pub use exec::Exec;
pub use matrix::{kernel_basis, rank, rref, SparseMatrix};
pub use rational::{parse_q, q, q_to_string, qf, sign_q, Q};
pub use sparse::SparseVec;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dim { expected: usize, got: usize },
    #[error("index {index} out of bounds for dimension {dim}")]
    Bounds { index: usize, dim: usize },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

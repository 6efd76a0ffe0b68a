//! Chords on an (n+1)-gon with a distinguished side, chord diagrams, and the
//! gravity / prime classification.
//!
//! Sides are numbered 1..=n+1 with side n+1 distinguished. A chord `{i,j}`
//! (1 <= i < j <= n, not `{1,n}`) separates sides i..=j from the rest. Polygon
//! vertex `v_m` sits between sides m and m+1, so the chord is the segment
//! `(v_{i-1}, v_j)`.

mod bracketing;
mod chord;
mod diagram;
mod relations;

pub use bracketing::{all_bracketings, bracketing_to_diagram, is_prime_bracketing, top_gravity_to_bracketing, Bracketing};
pub use chord::{chords_of, crosses, Chord, Polygon};
pub use diagram::{classify, enumerate, gravity_count, ChordDiagram, Classification, Filter};
pub use relations::{cross_ratio_pairs, perp, relation_pairs, relation_pairs_brute, RelationPair};

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("arity {0} is too small (need n >= 2)")]
    ArityTooSmall(usize),
    #[error("{{{i},{j}}} is not a chord of the {sides}-gon")]
    InvalidChord { i: usize, j: usize, sides: usize },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("diagram repeats chord {{{0},{1}}}")]
    RepeatedChord(usize, usize),
    #[error("expected a top-degree diagram (degree {expected}), got degree {got}")]
    NotTopDegree { expected: usize, got: usize },
    #[error("not a gravity diagram")]
    NotGravity,
    #[error("chords are not in canonical order")]
    NotCanonical,
    #[error("bad bracketing: {0}")]
    Bracketing(String),
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

//! Periods of prime gravity forms over the embedded associahedra.
//!
//! Points of the cell are written in the gauge `z_1 = 0`, `z_n = 1`,
//! `z_{n+1} = ∞`. Integrals are estimated by Monte Carlo on a cube that
//! parametrises the simplex `0 < z_2 < ... < z_{n-1} < 1`, with an end-point
//! substitution that tames the logarithmic boundary singularities.

pub mod cube;
pub mod forms;
pub mod point;
pub mod stokes;

pub use cube::{integrate_cube, Budget, Method, PeriodEstimate};
pub use forms::{integrate_period, period_map, prime_top_diagrams, zeta_series};
pub use point::{u_relation_defects, u_values, SimplexPoint, BOUNDARY_TOLERANCE};
pub use stokes::{boundary_terms, face_orientation, stokes_defect, FaceEstimate, StokesReport};


use polygon_combinatorics::PolygonError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PeriodError {
    #[error("point too close to the boundary: gap {0:e}")]
    Domain(f64),
    #[error("point is not strictly increasing")]
    Order,
    #[error("expected {expected} free coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("arity {0} outside the supported range 3..=5")]
    Arity(usize),
    #[error("{0}")]
    Diagram(String),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("{0}")]
    Cohomology(String),
}

impl From<moduli_cohomology::ModuliError> for PeriodError {
    fn from(e: moduli_cohomology::ModuliError) -> Self {
        PeriodError::Cohomology(e.to_string())
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

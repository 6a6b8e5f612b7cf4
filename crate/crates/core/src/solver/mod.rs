//! The three exact solvers: straight-line L1 on arbitrary polygonal
//! domains, geodesic L1 on simple polygons (median chords), and geodesic
//! L1 on polygons with holes (watershed overlay subdivision).

mod holes;
mod overlay;
mod simple;
mod straight;
mod types;

pub use holes::{build_overlay, solve_holes};
pub use overlay::{build_arrangement, interior_point, Overlay, OverlayFace};
pub use simple::{median_point, solve_simple};
pub use straight::{l1_origin, solve_straight, L1Origin};
pub use types::{Candidate, Provenance, SolveRecord, Solution};

use crate::geom::GeomError;
use crate::objective::ObjectiveError;
use crate::spm::SpmError;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
    #[error("solver requires a simple polygon but the domain has holes")]
    HasHoles,
    #[error("no feasible candidate found")]
    NoCandidates,
}

impl From<SpmError> for SolverError {
    fn from(e: SpmError) -> Self {
        SolverError::Objective(ObjectiveError::Spm(e))
    }
}

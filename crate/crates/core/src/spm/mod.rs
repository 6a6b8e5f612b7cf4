//! Shortest-path maps for the L1 geodesic metric.
//!
//! A shortest-path map (SPM) rooted at a source `Z` partitions the domain
//! into cells: within a cell every point `p` has geodesic distance
//! `d(Z, root) + |p - root|₁` to the source, where the root is either `Z`
//! itself or a domain vertex visible from `p`. Cell boundaries are
//! bisectors; a bisector across which the distance field has a ridge (two
//! shortest paths arriving from opposite sides) is a watershed.

mod bisector;
mod cardinal;
mod cells;
mod engine;
mod visibility;

pub use bisector::{BisectorChain, RootId};
pub use cardinal::{cardinal_areas, CardinalAreas};
pub use cells::{DIFF_NS, DIFF_OPS, build_spm, ShortestPathMap, SpmCell};
pub use engine::{geodesic_distance, SourceField, SpmEngine};
pub use visibility::{visibility_polygon, visible};

use crate::geom::GeomError;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpmError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("point ({x}, {y}) lies outside the domain")]
    PointOutsideDomain { x: f64, y: f64 },
    #[error("bisector chain between roots {a:?} and {b:?} cannot be probed")]
    DegenerateBisector { a: RootId, b: RootId },
    #[error("source position is degenerate: {reason}")]
    DegeneratePosition { reason: String },
}

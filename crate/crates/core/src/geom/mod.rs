//! Polygonal geometry substrate: points, rings, domain validation,
//! trapezoidization and point location.

mod critical;
mod domain;
mod point;
mod ring;
mod seg;
mod trapezoid;

pub use critical::{critical_vertices, CriticalKind, CriticalVertex};
pub use domain::{Location, PolygonalDomain};
pub use point::{cross, Axis, Point};
pub use ring::{
    clip_ring_halfplane, clip_ring_line, dedup_ring, point_in_ring, ring_abs_moment, ring_area,
    ring_is_simple, ring_moments, Ring,
};
pub use seg::{collinear_overlap, point_on_segment, seg_intersections, Segment};
pub use trapezoid::{trapezoidize, Trapezoid, Trapezoidization};

use thiserror::Error;

/// Relative tolerance used throughout the geometric kernel. Absolute
/// tolerances are derived from it by scaling with the domain diameter.
pub const EPS_GEOM: f64 = 1e-9;

/// Largest admissible coordinate magnitude.
pub const COORD_LIMIT: f64 = 1e6;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GeomError {
    #[error("ring {ring} is degenerate: {reason}")]
    DegenerateRing { ring: usize, reason: String },
    #[error("ring {ring} self-intersects or touches another ring")]
    SelfIntersection { ring: usize },
    #[error("hole ring {ring} is not strictly inside the outer ring")]
    HoleOutsideOuter { ring: usize },
    #[error("hole ring {ring} overlaps another hole")]
    HolesOverlap { ring: usize },
    #[error("ring {ring} has a non-finite or out-of-range coordinate")]
    BadCoordinate { ring: usize },
    #[error("point ({x}, {y}) lies outside the domain")]
    PointOutsideDomain { x: f64, y: f64 },
    #[error("trapezoid adjacency graph is not a tree (domain has holes?)")]
    NotATree,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

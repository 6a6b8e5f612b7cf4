//! Exact solvers for the continuous 1-median (Fermat-Weber) problem on
//! polygonal domains under the L1 metric, straight-line and geodesic,
//! together with an independent numerical oracle.
//!
//! The crate is organized around the pipeline
//! domain validation -> shortest-path maps -> objective evaluation -> solvers:
//!
//! * [`geom`] — polygons, validation, trapezoidization, point location
//! * [`spm`] — L1 geodesic distances, shortest-path maps, watersheds,
//!   cardinal (W/E/N/S) areas
//! * [`objective`] — exact evaluation of the average-distance objective,
//!   its gradient, and per-cell cubic representations
//! * [`solver`] — the three exact solvers (straight-line, simple polygon
//!   geodesic, polygon-with-holes geodesic)
//! * [`oracle`] — brute-force numerical verification, sharing no geometry
//!   code with the solvers beyond validation
//!
//! All core math is generic over the scalar type via [`Scalar`]; `f64`
//! aliases are exported at the crate root and are what the CLI uses.

pub mod geom;
pub mod instances;
pub mod objective;
pub mod oracle;
pub mod scalar;
pub mod solver;
pub mod spm;
pub mod svg;

pub use scalar::Scalar;

/// Default scalar used by the CLI and the concrete aliases below.
pub type Real = f64;

pub type Point = geom::Point<Real>;
pub type PolygonalDomain = geom::PolygonalDomain<Real>;
pub type Trapezoidization = geom::Trapezoidization<Real>;
pub type ShortestPathMap = spm::ShortestPathMap<Real>;
pub type CardinalAreas = spm::CardinalAreas<Real>;
pub type CubicPair = objective::CubicPair<Real>;
pub type Candidate = solver::Candidate<Real>;
pub type GridSpec = oracle::GridSpec;

/// Distance model used by the objective and the solvers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Metric {
    /// Straight-line L1 distance |dx| + |dy|, ignoring the domain.
    Straight,
    /// Length of a shortest path inside the domain, measured in L1.
    Geodesic,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Straight => "l1-straight",
            Metric::Geodesic => "l1-geodesic",
        }
    }
}

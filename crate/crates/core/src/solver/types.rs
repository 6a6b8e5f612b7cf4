use crate::geom::Point;
use crate::scalar::Scalar;
use serde::Serialize;
use std::fmt;

/// Where a candidate optimum came from. Reported verbatim in solver
/// records so symmetric and degenerate instances can be diagnosed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    /// The unconstrained L1 origin (componentwise area median).
    L1Origin,
    /// Axis projection of an infeasible L1 origin onto the boundary.
    OriginProjection,
    /// Stationary point in the interior of a boundary subsegment.
    EdgeInterior { edge: usize },
    /// A domain vertex or boundary subdivision point.
    BoundaryPoint,
    /// Median chord intersection of the simple-polygon solver.
    MedianChord,
    /// Vertex of the overlay subdivision.
    OverlayVertex,
    /// Stationary point of a face cubic in the face interior.
    FaceInterior { face: usize },
    /// Stationary point of a face cubic along a face edge.
    FaceEdge { face: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::L1Origin => write!(f, "l1-origin"),
            Provenance::OriginProjection => write!(f, "origin-projection"),
            Provenance::EdgeInterior { edge } => write!(f, "edge-interior:{edge}"),
            Provenance::BoundaryPoint => write!(f, "boundary-point"),
            Provenance::MedianChord => write!(f, "median-chord"),
            Provenance::OverlayVertex => write!(f, "overlay-vertex"),
            Provenance::FaceInterior { face } => write!(f, "face-interior:{face}"),
            Provenance::FaceEdge { face } => write!(f, "face-edge:{face}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Candidate<F> {
    pub point: Point<F>,
    pub value: F,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct Solution<F> {
    pub optimum: Candidate<F>,
    /// All candidates whose value ties the optimum within `TIE_TOL`,
    /// the optimum included, at pairwise distinct points.
    pub ties: Vec<Candidate<F>>,
    pub candidates_evaluated: usize,
}

/// Tie and deduplication tolerance shared by all solvers.
pub const TIE_TOL: f64 = 1e-9;

impl<F: Scalar> Solution<F> {
    /// Pick the optimum deterministically: smallest value, then
    /// lexicographically smallest point.
    pub fn from_candidates(
        mut cands: Vec<Candidate<F>>,
        candidates_evaluated: usize,
    ) -> Option<Self> {
        cands.retain(|c| c.value.is_finite());
        if cands.is_empty() {
            return None;
        }
        cands.sort_by(|p, q| {
            (p.value, p.point.x, p.point.y)
                .partial_cmp(&(q.value, q.point.x, q.point.y))
                .unwrap()
        });
        let tol = F::lit(TIE_TOL);
        let best = cands[0];
        let mut ties: Vec<Candidate<F>> = Vec::new();
        for c in cands.iter().take_while(|c| c.value <= best.value + tol) {
            if ties.iter().all(|t| t.point.l1(&c.point) > tol) {
                ties.push(*c);
            }
        }
        Some(Solution { optimum: best, ties, candidates_evaluated })
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct OptimumRecord {
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub provenance: String,
}

/// JSON-facing result record shared by the solvers and the CLI.
#[derive(Serialize, Debug, Clone)]
pub struct SolveRecord {
    pub metric: String,
    pub optimum: OptimumRecord,
    pub candidates_evaluated: usize,
    pub ties: Vec<OptimumRecord>,
}

impl SolveRecord {
    pub fn new<F: Scalar>(metric: crate::Metric, sol: &Solution<F>) -> Self {
        let conv = |c: &Candidate<F>| OptimumRecord {
            x: c.point.x.to_f64_lossy(),
            y: c.point.y.to_f64_lossy(),
            f: c.value.to_f64_lossy(),
            provenance: c.provenance.to_string(),
        };
        SolveRecord {
            metric: metric.as_str().to_string(),
            optimum: conv(&sol.optimum),
            candidates_evaluated: sol.candidates_evaluated,
            ties: sol.ties.iter().map(conv).collect(),
        }
    }
}

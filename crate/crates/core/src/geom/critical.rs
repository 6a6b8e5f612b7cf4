use super::domain::PolygonalDomain;
use super::point::{cross, Axis, Point};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CriticalKind {
    Min,
    Max,
}

/// A reflex vertex that is a local extremum of one coordinate along its
/// ring. Geodesic paths bend only at such vertices, and the objective can
/// lose smoothness across the axis lines through them.
#[derive(Clone, Copy, Debug)]
pub struct CriticalVertex<F> {
    pub ring: usize,
    pub index: usize,
    pub point: Point<F>,
    pub axis: Axis,
    pub kind: CriticalKind,
}

/// Reflex vertices that are locally extremal in the given axis.
/// Neighbors tying with the vertex coordinate still count as extremal.
/// Both the outer ring (CCW) and holes (CW) keep the interior on the
/// left, so a vertex is reflex exactly when its two edges make a right
/// turn.
pub fn critical_vertices<F: Scalar>(
    domain: &PolygonalDomain<F>,
    axis: Axis,
) -> Vec<CriticalVertex<F>> {
    let mut out = Vec::new();
    for (ring_idx, ring) in domain.rings().enumerate() {
        let n = ring.len();
        for i in 0..n {
            let prev = &ring[(i + n - 1) % n];
            let cur = &ring[i];
            let next = &ring[(i + 1) % n];
            if cross(prev, cur, next) >= F::zero() {
                continue;
            }
            let (a, b, c) = (prev.coord(axis), cur.coord(axis), next.coord(axis));
            let kind = if a >= b && c >= b {
                Some(CriticalKind::Min)
            } else if a <= b && c <= b {
                Some(CriticalKind::Max)
            } else {
                None
            };
            if let Some(kind) = kind {
                out.push(CriticalVertex { ring: ring_idx, index: i, point: *cur, axis, kind });
            }
        }
    }
    out
}

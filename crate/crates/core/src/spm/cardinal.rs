use super::cells::{build_spm, multi_area, rings_to_multi, SpmCell};
use super::engine::SpmEngine;
use super::SpmError;
use crate::geom::{
    clip_ring_halfplane, critical_vertices, ring_area, Axis, Location, Point, PolygonalDomain,
    Ring,
};
use crate::scalar::Scalar;
use crate::Metric;
use geo::BooleanOps;

/// Areas of the four cardinal regions of a source point `Z`: the parts
/// of the domain whose distance to `Z` grows when `Z` moves east (`w`),
/// west (`e`), north (`s`) and south (`n`). The objective gradient is
/// `((w - e)/mu, (s - n)/mu)`.
#[derive(Clone, Copy, Debug)]
pub struct CardinalAreas<F> {
    pub w: F,
    pub e: F,
    pub s: F,
    pub n: F,
    pub mu: F,
}

impl<F: Scalar> CardinalAreas<F> {
    pub fn gradient(&self) -> (F, F) {
        ((self.w - self.e) / self.mu, (self.s - self.n) / self.mu)
    }
}

pub fn cardinal_areas<F: Scalar>(
    domain: &PolygonalDomain<F>,
    z: &Point<F>,
    metric: Metric,
    engine: Option<&SpmEngine<F>>,
) -> Result<CardinalAreas<F>, SpmError> {
    if domain.locate(z) == Location::Exterior {
        return Err(SpmError::PointOutsideDomain {
            x: z.x.to_f64_lossy(),
            y: z.y.to_f64_lossy(),
        });
    }
    match metric {
        Metric::Straight => Ok(cardinal_straight(domain, z)),
        Metric::Geodesic => {
            let owned;
            let eng = match engine {
                Some(e) => e,
                None => {
                    owned = SpmEngine::new(domain)?;
                    &owned
                }
            };
            cardinal_geodesic(eng, z)
        }
    }
}

fn clip_area<F: Scalar>(domain: &PolygonalDomain<F>, axis: Axis, c: F) -> F {
    let mut acc = F::zero();
    for ring in domain.rings() {
        let clipped = clip_ring_halfplane(ring, axis, c, true);
        if clipped.len() >= 3 {
            acc += ring_area(&clipped);
        }
    }
    acc
}

fn cardinal_straight<F: Scalar>(domain: &PolygonalDomain<F>, z: &Point<F>) -> CardinalAreas<F> {
    let mu = domain.area();
    let w = clip_area(domain, Axis::X, z.x);
    let s = clip_area(domain, Axis::Y, z.y);
    CardinalAreas { w, e: mu - w, s, n: mu - s, mu }
}

fn cardinal_geodesic<F: Scalar>(
    engine: &SpmEngine<F>,
    z: &Point<F>,
) -> Result<CardinalAreas<F>, SpmError> {
    let dom = &engine.domain;
    let tol = dom.eps();
    // The cardinal decomposition (and the gradient formula) needs the
    // axis lines through the source to avoid path-bending vertices.
    for cv in critical_vertices(dom, Axis::X) {
        if (z.x - cv.point.x).fabs() <= tol {
            return Err(SpmError::DegeneratePosition {
                reason: format!(
                    "source x matches critical vertex at ({}, {})",
                    cv.point.x, cv.point.y
                ),
            });
        }
    }
    for cv in critical_vertices(dom, Axis::Y) {
        if (z.y - cv.point.y).fabs() <= tol {
            return Err(SpmError::DegeneratePosition {
                reason: format!(
                    "source y matches critical vertex at ({}, {})",
                    cv.point.x, cv.point.y
                ),
            });
        }
    }

    let spm = build_spm(engine, z, false)?;
    let field = engine.source_field(z)?;
    let mu = dom.area();
    let mut w = F::zero();
    let mut e = F::zero();
    let mut s = F::zero();
    let mut n = F::zero();
    for cell in &spm.cells {
        let area = cell.area();
        match classify(engine, &field, cell, z, Axis::X, tol) {
            Side::Lo => w += area,
            Side::Hi => e += area,
            Side::Split => {
                let lo = half_area(cell, z, Axis::X);
                w += lo;
                e += area - lo;
            }
        }
        match classify(engine, &field, cell, z, Axis::Y, tol) {
            Side::Lo => s += area,
            Side::Hi => n += area,
            Side::Split => {
                let lo = half_area(cell, z, Axis::Y);
                s += lo;
                n += area - lo;
            }
        }
    }
    Ok(CardinalAreas { w, e, s, n, mu })
}

enum Side {
    Lo,
    Hi,
    Split,
}

/// Which way do shortest paths from the source into this cell set off
/// along `axis`? Decided by the first path vertex whose coordinate
/// differs from the source's; if the whole path ties, the cell itself
/// straddles the axis line and must be split geometrically.
fn classify<F: Scalar>(
    engine: &SpmEngine<F>,
    field: &super::engine::SourceField<F>,
    cell: &SpmCell<F>,
    z: &Point<F>,
    axis: Axis,
    tol: F,
) -> Side {
    if let Some((qx, qy)) = cell.quadrant {
        let q = match axis {
            Axis::X => qx,
            Axis::Y => qy,
        };
        return if q < 0 { Side::Lo } else { Side::Hi };
    }
    let v = match cell.root {
        super::bisector::RootId::Vertex(v) => v,
        super::bisector::RootId::Source => return Side::Split,
    };
    for u in engine.path_from_source(field, v) {
        let c = engine.verts[u].coord(axis);
        let zc = z.coord(axis);
        if (c - zc).fabs() > tol {
            return if c < zc { Side::Lo } else { Side::Hi };
        }
    }
    Side::Split
}

/// Area of the part of the cell on the low side of the axis line
/// through `z`.
fn half_area<F: Scalar>(cell: &SpmCell<F>, z: &Point<F>, axis: Axis) -> F {
    let big = F::lit(1e7);
    let c = z.coord(axis);
    let rect: Ring<F> = match axis {
        Axis::X => vec![
            Point::new(-big, -big),
            Point::new(c, -big),
            Point::new(c, big),
            Point::new(-big, big),
        ],
        Axis::Y => vec![
            Point::new(-big, -big),
            Point::new(big, -big),
            Point::new(big, c),
            Point::new(-big, c),
        ],
    };
    let part = cell.region.intersection(&rings_to_multi(std::slice::from_ref(&rect)));
    multi_area(&part)
}

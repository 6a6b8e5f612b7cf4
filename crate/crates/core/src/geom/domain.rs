use super::point::Point;
use super::ring::{point_in_ring, ring_area, ring_is_simple, Ring};
use super::seg::{point_on_segment, seg_intersections, Segment};
use super::{GeomError, COORD_LIMIT, EPS_GEOM};
use crate::scalar::Scalar;

/// Classification of a point against a domain. Points within a band of
/// `1e-9 * diameter` around the boundary are `Boundary`; the domain is
/// closed, so boundary points are feasible.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// A validated polygonal domain: one simple outer ring (CCW) and zero or
/// more pairwise disjoint simple hole rings (CW), each strictly inside
/// the outer ring.
#[derive(Clone, Debug)]
pub struct PolygonalDomain<F = f64> {
    outer: Ring<F>,
    holes: Vec<Ring<F>>,
    area: F,
    bbox: (Point<F>, Point<F>),
}

impl<F: Scalar> PolygonalDomain<F> {
    /// Validate raw rings and build a domain. `rings[0]` is the outer
    /// boundary, the rest are holes. Input orientation is arbitrary;
    /// rings are reoriented on acceptance. A trailing vertex equal to the
    /// first is tolerated and dropped.
    pub fn validate(rings: &[Vec<(F, F)>]) -> Result<Self, GeomError> {
        if rings.is_empty() {
            return Err(GeomError::DegenerateRing {
                ring: 0,
                reason: "no rings given".into(),
            });
        }
        let limit = F::lit(COORD_LIMIT);
        let mut cleaned: Vec<Ring<F>> = Vec::with_capacity(rings.len());
        for (idx, raw) in rings.iter().enumerate() {
            let mut ring: Ring<F> = raw.iter().map(|&(x, y)| Point::new(x, y)).collect();
            for p in &ring {
                if !p.is_finite() || p.x.fabs() > limit || p.y.fabs() > limit {
                    return Err(GeomError::BadCoordinate { ring: idx });
                }
            }
            if ring.len() >= 2 && ring[0] == *ring.last().unwrap() {
                ring.pop();
            }
            if ring.len() < 3 {
                return Err(GeomError::DegenerateRing {
                    ring: idx,
                    reason: "fewer than three vertices".into(),
                });
            }
            cleaned.push(ring);
        }

        // Scale for absolute tolerances, from the raw bounding box.
        let mut lo = Point::new(F::infinity(), F::infinity());
        let mut hi = Point::new(F::neg_infinity(), F::neg_infinity());
        for p in cleaned.iter().flatten() {
            lo.x = lo.x.fmin(p.x);
            lo.y = lo.y.fmin(p.y);
            hi.x = hi.x.fmax(p.x);
            hi.y = hi.y.fmax(p.y);
        }
        let diam = (hi.x - lo.x).fabs() + (hi.y - lo.y).fabs();
        let eps = F::lit(EPS_GEOM) * (diam + F::one());

        for (idx, ring) in cleaned.iter().enumerate() {
            let n = ring.len();
            for i in 0..n {
                let a = &ring[i];
                let b = &ring[(i + 1) % n];
                if a.l1(b) <= eps {
                    return Err(GeomError::DegenerateRing {
                        ring: idx,
                        reason: format!("zero-length edge at vertex {i}"),
                    });
                }
            }
            for i in 0..n {
                let prev = &ring[(i + n - 1) % n];
                let cur = &ring[i];
                let next = &ring[(i + 1) % n];
                let chord = Segment::new(*prev, *next);
                if chord.dist_to_point(cur) <= eps {
                    return Err(GeomError::DegenerateRing {
                        ring: idx,
                        reason: format!("collinear vertex {i}"),
                    });
                }
            }
            if ring_area(ring).fabs() <= eps * eps {
                return Err(GeomError::DegenerateRing {
                    ring: idx,
                    reason: "zero area".into(),
                });
            }
            if !ring_is_simple(ring, eps) {
                return Err(GeomError::SelfIntersection { ring: idx });
            }
        }

        // No vertex may coincide with, or sit on an edge of, another ring.
        for i in 0..cleaned.len() {
            for j in 0..cleaned.len() {
                if i == j {
                    continue;
                }
                let m = cleaned[j].len();
                for p in &cleaned[i] {
                    for k in 0..m {
                        let s = Segment::new(cleaned[j][k], cleaned[j][(k + 1) % m]);
                        if point_on_segment(p, &s, eps) {
                            return Err(GeomError::SelfIntersection { ring: i.max(j) });
                        }
                    }
                }
            }
        }
        // No edge crossings between distinct rings.
        for i in 0..cleaned.len() {
            for j in (i + 1)..cleaned.len() {
                let (ri, rj) = (&cleaned[i], &cleaned[j]);
                for a in 0..ri.len() {
                    let sa = Segment::new(ri[a], ri[(a + 1) % ri.len()]);
                    for b in 0..rj.len() {
                        let sb = Segment::new(rj[b], rj[(b + 1) % rj.len()]);
                        if !seg_intersections(&sa, &sb, eps).is_empty() {
                            return Err(GeomError::SelfIntersection { ring: j });
                        }
                    }
                }
            }
        }

        let mut outer = cleaned[0].clone();
        if ring_area(&outer) < F::zero() {
            outer.reverse();
        }
        let mut holes: Vec<Ring<F>> = Vec::new();
        for (idx, ring) in cleaned.iter().enumerate().skip(1) {
            // Edges are already known disjoint, so one vertex decides
            // containment for the whole ring.
            if !point_in_ring(&ring[0], &outer, eps) {
                return Err(GeomError::HoleOutsideOuter { ring: idx });
            }
            for (jdx, other) in cleaned.iter().enumerate().skip(1) {
                if jdx == idx {
                    continue;
                }
                if point_in_ring(&ring[0], other, eps) {
                    return Err(GeomError::HolesOverlap { ring: idx.max(jdx) });
                }
            }
            let mut h = ring.clone();
            if ring_area(&h) > F::zero() {
                h.reverse();
            }
            holes.push(h);
        }

        let mut area = ring_area(&outer);
        for h in &holes {
            area += ring_area(h); // negative
        }
        if area <= eps * eps {
            return Err(GeomError::DegenerateRing {
                ring: 0,
                reason: "holes exhaust the outer ring".into(),
            });
        }
        Ok(PolygonalDomain { outer, holes, area, bbox: (lo, hi) })
    }

    pub fn from_points(outer: &[(F, F)], holes: &[Vec<(F, F)>]) -> Result<Self, GeomError> {
        let mut rings = vec![outer.to_vec()];
        rings.extend(holes.iter().cloned());
        Self::validate(&rings)
    }

    pub fn outer(&self) -> &Ring<F> {
        &self.outer
    }

    pub fn holes(&self) -> &[Ring<F>] {
        &self.holes
    }

    /// All rings, outer first. Orientations carry sign (outer CCW, holes
    /// CW), so signed integrals over the ring list cover the interior.
    pub fn rings(&self) -> impl Iterator<Item = &Ring<F>> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn area(&self) -> F {
        self.area
    }

    pub fn bbox(&self) -> (Point<F>, Point<F>) {
        self.bbox
    }

    /// L1 diameter of the bounding box. The scale for all derived
    /// tolerances.
    pub fn diameter(&self) -> F {
        let (lo, hi) = self.bbox;
        (hi.x - lo.x) + (hi.y - lo.y)
    }

    pub fn eps(&self) -> F {
        F::lit(EPS_GEOM) * (self.diameter() + F::one())
    }

    pub fn vertex_count(&self) -> usize {
        self.rings().map(|r| r.len()).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Point<F>> {
        self.rings().flatten()
    }

    pub fn edges(&self) -> Vec<Segment<F>> {
        let mut out = Vec::with_capacity(self.vertex_count());
        for ring in self.rings() {
            for i in 0..ring.len() {
                out.push(Segment::new(ring[i], ring[(i + 1) % ring.len()]));
            }
        }
        out
    }

    pub fn locate(&self, p: &Point<F>) -> Location {
        let band = self.eps();
        for s in self.edges() {
            if s.dist_to_point(p) <= band {
                return Location::Boundary;
            }
        }
        if !point_in_ring(p, &self.outer, F::zero()) {
            return Location::Exterior;
        }
        for h in &self.holes {
            if point_in_ring(p, h, F::zero()) {
                return Location::Exterior;
            }
        }
        Location::Interior
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        self.locate(p) != Location::Exterior
    }

    /// The same domain with x and y swapped. Ring orientations are
    /// restored by reversal so signed areas keep their meaning.
    pub fn transpose(&self) -> PolygonalDomain<F> {
        let flip = |r: &Ring<F>| -> Ring<F> { r.iter().rev().map(|p| p.transpose()).collect() };
        let (lo, hi) = self.bbox;
        PolygonalDomain {
            outer: flip(&self.outer),
            holes: self.holes.iter().map(|h| flip(h)).collect(),
            area: self.area,
            bbox: (lo.transpose(), hi.transpose()),
        }
    }
}

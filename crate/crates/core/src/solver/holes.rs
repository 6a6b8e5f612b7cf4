use super::overlay::{build_arrangement, Overlay};
use super::types::{Candidate, Provenance, Solution};
use super::SolverError;
use crate::geom::{point_in_ring, Location, Point, PolygonalDomain, Segment};
use crate::objective::{evaluate_f, fit_cell_cubic, quad_roots, CubicPair, ObjectiveError};
use crate::scalar::Scalar;
use crate::spm::{build_spm, SpmEngine};
use crate::Metric;

/// Maximal in-domain portions of the full axis lines through `c`.
fn axis_chords<F: Scalar>(domain: &PolygonalDomain<F>, c: &Point<F>) -> Vec<Segment<F>> {
    let (lo, hi) = domain.bbox();
    let margin = F::one();
    let mut out = Vec::new();
    let lines = [
        Segment::new(Point::new(lo.x - margin, c.y), Point::new(hi.x + margin, c.y)),
        Segment::new(Point::new(c.x, lo.y - margin), Point::new(c.x, hi.y + margin)),
    ];
    let eps = domain.eps();
    for line in lines {
        let mut ts: Vec<F> = Vec::new();
        for e in domain.edges() {
            ts.extend(crate::geom::seg_intersections(&line, &e, eps));
        }
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.dedup_by(|a, b| (*a - *b).fabs() <= F::lit(1e-12));
        for w in ts.windows(2) {
            let m = line.eval((w[0] + w[1]) * F::lit(0.5));
            if domain.locate(&m) != Location::Exterior {
                out.push(Segment::new(line.eval(w[0]), line.eval(w[1])));
            }
        }
    }
    out
}

/// The subdivision the holed-domain solver optimizes over: domain
/// boundary edges, the watershed chains of the shortest-path map of
/// every vertex, and the axis chords through every vertex. Within each
/// face of this overlay the objective is one separable cubic pair.
///
/// Watersheds alone do not cut finely enough: the gradient (and second
/// derivative) of the objective also jumps across the axis lines through
/// vertices, so those chords are part of the overlay.
pub fn build_overlay<F: Scalar>(
    domain: &PolygonalDomain<F>,
    engine: &SpmEngine<F>,
) -> Result<Overlay<F>, SolverError> {
    let mut segments: Vec<Segment<F>> = domain.edges();
    for v in domain.vertices() {
        segments.extend(axis_chords(domain, v));
    }
    for vi in 0..engine.vertex_count() {
        let spm = build_spm(engine, &engine.verts[vi], true)?;
        for chain in &spm.bisectors {
            if !chain.watershed {
                continue;
            }
            for w in chain.polyline.windows(2) {
                segments.push(Segment::new(w[0], w[1]));
            }
        }
    }
    let snap = F::lit(1e-9) * (domain.diameter() + F::one());
    Ok(build_arrangement(&segments, snap))
}

/// Geodesic L1 solver for polygons with holes.
///
/// Every face of the overlay carries a separable cubic interpolated from
/// seven exact objective samples. Candidates are the stationary points
/// of those cubics (in face interiors and along face edges) and every
/// overlay vertex. Cubic estimates rank the candidates; only those
/// within a safety margin of the best estimate are re-evaluated exactly.
pub fn solve_holes<F: Scalar>(domain: &PolygonalDomain<F>) -> Result<Solution<F>, SolverError> {
    let engine = SpmEngine::new(domain)?;
    let overlay = build_overlay(domain, &engine)?;
    solve_on_overlay(domain, &engine, &overlay)
}

pub(crate) fn solve_on_overlay<F: Scalar>(
    domain: &PolygonalDomain<F>,
    engine: &SpmEngine<F>,
    overlay: &Overlay<F>,
) -> Result<Solution<F>, SolverError> {
    let eps = domain.eps();
    let thin = F::lit(1e-7) * (domain.diameter() + F::one());
    let mut exact_evals = 0usize;
    let exact = |p: &Point<F>| -> Result<F, ObjectiveError> {
        evaluate_f(domain, p, Metric::Geodesic, Some(engine))
    };

    struct Pending<F> {
        point: Point<F>,
        provenance: Provenance,
        estimate: Option<F>,
    }
    let mut pending: Vec<Pending<F>> = Vec::new();
    let mut fits: Vec<Option<CubicPair<F>>> = Vec::new();

    for (fi, face) in overlay.faces.iter().enumerate() {
        if domain.locate(&face.rep) == Location::Exterior {
            fits.push(None);
            continue;
        }
        let clearance = face
            .ring
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let s = Segment::new(face.ring[i], face.ring[(i + 1) % face.ring.len()]);
                s.dist_to_point(&face.rep)
            })
            .fold(F::infinity(), F::fmin);
        let radius = clearance * F::lit(0.45);
        if radius <= thin {
            fits.push(None);
            continue;
        }
        let cubic = match fit_cell_cubic(|p| exact(&p), face.rep, radius) {
            Ok(c) => {
                exact_evals += 7;
                c
            }
            Err(ObjectiveError::Spm(e)) => return Err(e.into()),
            Err(_) => {
                fits.push(None);
                continue;
            }
        };
        fits.push(Some(cubic));

        let xlo = face.ring.iter().map(|p| p.x).fold(F::infinity(), F::fmin);
        let xhi = face.ring.iter().map(|p| p.x).fold(F::neg_infinity(), F::fmax);
        let ylo = face.ring.iter().map(|p| p.y).fold(F::infinity(), F::fmin);
        let yhi = face.ring.iter().map(|p| p.y).fold(F::neg_infinity(), F::fmax);

        // Interior stationary points: f1' and f2' roots combined.
        for &rx in &cubic.dx_roots(xlo, xhi) {
            for &ry in &cubic.dy_roots(ylo, yhi) {
                let p = Point::new(rx, ry);
                if point_in_ring(&p, &face.ring, F::zero())
                    && domain.locate(&p) != Location::Exterior
                {
                    pending.push(Pending {
                        point: p,
                        provenance: Provenance::FaceInterior { face: fi },
                        estimate: Some(cubic.eval(p.x, p.y)),
                    });
                }
            }
        }

        // Stationary points along each face edge.
        for i in 0..face.ring.len() {
            let a = face.ring[i];
            let b = face.ring[(i + 1) % face.ring.len()];
            let seg = Segment::new(a, b);
            if seg.len_l2() <= eps {
                continue;
            }
            let dx = b.x - a.x;
            let dy = b.y - a.y;
            // d/dt [f1(x(t)) + f2(y(t))] is quadratic in t.
            let qa = F::lit(3.0) * (cubic.a[3] * dx * dx * dx + cubic.b[3] * dy * dy * dy);
            let qb = F::lit(6.0) * cubic.a[3] * a.x * dx * dx
                + F::lit(2.0) * cubic.a[2] * dx * dx
                + F::lit(6.0) * cubic.b[3] * a.y * dy * dy
                + F::lit(2.0) * cubic.b[2] * dy * dy;
            let qc = (F::lit(3.0) * cubic.a[3] * a.x * a.x
                + F::lit(2.0) * cubic.a[2] * a.x
                + cubic.a[1])
                * dx
                + (F::lit(3.0) * cubic.b[3] * a.y * a.y
                    + F::lit(2.0) * cubic.b[2] * a.y
                    + cubic.b[1])
                    * dy;
            for t in quad_roots(qa, qb, qc, F::zero(), F::one()) {
                if t <= F::lit(1e-9) || t >= F::one() - F::lit(1e-9) {
                    continue;
                }
                let p = seg.eval(t);
                if domain.locate(&p) != Location::Exterior {
                    pending.push(Pending {
                        point: p,
                        provenance: Provenance::FaceEdge { face: fi },
                        estimate: Some(cubic.eval(p.x, p.y)),
                    });
                }
            }
        }
    }

    // Every overlay vertex, estimated through any adjacent fitted face.
    for v in &overlay.vertices {
        if domain.locate(v) == Location::Exterior {
            continue;
        }
        let mut estimate = None;
        for (fi, face) in overlay.faces.iter().enumerate() {
            if let Some(cubic) = &fits[fi] {
                if point_in_ring(v, &face.ring, eps) {
                    estimate = Some(cubic.eval(v.x, v.y));
                    break;
                }
            }
        }
        pending.push(Pending { point: *v, provenance: Provenance::OverlayVertex, estimate });
    }

    if pending.is_empty() {
        return Err(SolverError::NoCandidates);
    }

    // Rank by estimate; exactly evaluate everything within the safety
    // margin plus everything with no usable estimate.
    let best_est = pending
        .iter()
        .filter_map(|p| p.estimate)
        .fold(F::infinity(), F::fmin);
    let margin = F::lit(1e-4) * (domain.diameter() + F::one()) + F::lit(1e-9);

    let mut cands: Vec<Candidate<F>> = Vec::new();
    let mut seen: Vec<Point<F>> = Vec::new();
    let tol = F::lit(super::types::TIE_TOL);
    for p in &pending {
        let take = match p.estimate {
            None => true,
            Some(e) => e <= best_est + margin,
        };
        if !take {
            continue;
        }
        if seen.iter().any(|q| q.l1(&p.point) <= tol) {
            continue;
        }
        seen.push(p.point);
        match exact(&p.point) {
            Ok(v) => {
                exact_evals += 1;
                cands.push(Candidate { point: p.point, value: v, provenance: p.provenance });
            }
            Err(ObjectiveError::Spm(crate::spm::SpmError::PointOutsideDomain { .. })) => {}
            Err(e) => return Err(e.into()),
        }
    }

    Solution::from_candidates(cands, exact_evals).ok_or(SolverError::NoCandidates)
}

use super::types::{Candidate, Provenance, Solution};
use super::SolverError;
use crate::geom::{
    clip_ring_halfplane, ring_area, Axis, Location, Point, PolygonalDomain, Segment,
};
use crate::objective::{evaluate_f, quad_roots};
use crate::scalar::Scalar;
use crate::spm::cardinal_areas;
use crate::Metric;

/// The unconstrained straight-line L1 optimum: the componentwise area
/// median of the domain.
#[derive(Clone, Copy, Debug)]
pub struct L1Origin<F> {
    pub point: Point<F>,
    pub feasible: bool,
}

fn area_below<F: Scalar>(domain: &PolygonalDomain<F>, axis: Axis, c: F) -> F {
    let mut acc = F::zero();
    for ring in domain.rings() {
        let clipped = clip_ring_halfplane(ring, axis, c, true);
        if clipped.len() >= 3 {
            acc += ring_area(&clipped);
        }
    }
    acc
}

/// Solve `area_below(axis, c) = mu/2` for `c`. The cumulative area is
/// piecewise quadratic with breakpoints at vertex coordinates, so the
/// crossing slab is found by scanning and the exact coordinate by
/// three-point quadratic interpolation, which is exact for a quadratic.
fn area_median<F: Scalar>(domain: &PolygonalDomain<F>, axis: Axis) -> F {
    let target = domain.area() * F::lit(0.5);
    let mut cs: Vec<F> = domain.vertices().map(|p| p.coord(axis)).collect();
    cs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cs.dedup_by(|a, b| (*a - *b).fabs() <= F::lit(0.0));
    let mut below = F::zero();
    for win in cs.windows(2) {
        let (c0, c1) = (win[0], win[1]);
        let a0 = below;
        let a1 = area_below(domain, axis, c1);
        below = a1;
        if a1 < target {
            continue;
        }
        let am = area_below(domain, axis, (c0 + c1) * F::lit(0.5));
        // Quadratic through (0, a0), (1/2, am), (1, a1) in slab parameter.
        let qa = F::lit(2.0) * a0 - F::lit(4.0) * am + F::lit(2.0) * a1;
        let qb = F::lit(4.0) * am - F::lit(3.0) * a0 - a1;
        let roots = quad_roots(qa, qb, a0 - target, F::zero(), F::one());
        let t = roots.first().copied().unwrap_or(F::lit(0.5));
        return c0 + t * (c1 - c0);
    }
    *cs.last().unwrap()
}

pub fn l1_origin<F: Scalar>(domain: &PolygonalDomain<F>) -> L1Origin<F> {
    let p = Point::new(area_median(domain, Axis::X), area_median(domain, Axis::Y));
    L1Origin { point: p, feasible: domain.locate(&p) != Location::Exterior }
}

/// Axis-aligned rectangle spanned by two points, as coordinate ranges.
fn rect<F: Scalar>(a: &Point<F>, b: &Point<F>) -> (F, F, F, F) {
    (a.x.fmin(b.x), a.x.fmax(b.x), a.y.fmin(b.y), a.y.fmax(b.y))
}

fn rect_intersect<F: Scalar>(r: (F, F, F, F), s: (F, F, F, F)) -> Option<(F, F, F, F)> {
    let out = (r.0.fmax(s.0), r.1.fmin(s.1), r.2.fmax(s.2), r.3.fmin(s.3));
    (out.0 <= out.1 && out.2 <= out.3).then_some(out)
}

/// Exact straight-line L1 solver.
///
/// If the L1 origin is feasible it is the unique global optimum by
/// separable convexity. Otherwise the optimum lies on the boundary:
/// every edge is subdivided at the axis lines through vertices and at
/// the origin's axis lines, and on each subsegment the directional
/// derivative of the objective is a quadratic recovered from three
/// gradient samples. Rectangle domination prunes subsegments that some
/// already-known candidate dominates pointwise.
pub fn solve_straight<F: Scalar>(
    domain: &PolygonalDomain<F>,
    use_pruning: bool,
) -> Result<Solution<F>, SolverError> {
    let origin = l1_origin(domain);
    let mut evals = 0usize;
    let mut value_at = |p: &Point<F>| -> Result<F, SolverError> {
        evals += 1;
        Ok(evaluate_f(domain, p, Metric::Straight, None)?)
    };

    if origin.feasible {
        let v = value_at(&origin.point)?;
        let cand = Candidate { point: origin.point, value: v, provenance: Provenance::L1Origin };
        return Solution::from_candidates(vec![cand], evals).ok_or(SolverError::NoCandidates);
    }

    let zm = origin.point;
    let eps = domain.eps();
    let tol = F::lit(1e-12);

    let mut xs: Vec<F> = domain.vertices().map(|p| p.x).collect();
    let mut ys: Vec<F> = domain.vertices().map(|p| p.y).collect();
    xs.push(zm.x);
    ys.push(zm.y);

    // Subdivide every boundary edge at the collected axis lines.
    struct Sub<F> {
        edge: usize,
        seg: Segment<F>,
    }
    let mut subs: Vec<Sub<F>> = Vec::new();
    for (edge, e) in domain.edges().iter().enumerate() {
        let mut ts: Vec<F> = vec![F::zero(), F::one()];
        let dx = e.b.x - e.a.x;
        let dy = e.b.y - e.a.y;
        for &x in &xs {
            if dx.fabs() > tol {
                let t = (x - e.a.x) / dx;
                if t > F::zero() && t < F::one() {
                    ts.push(t);
                }
            }
        }
        for &y in &ys {
            if dy.fabs() > tol {
                let t = (y - e.a.y) / dy;
                if t > F::zero() && t < F::one() {
                    ts.push(t);
                }
            }
        }
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.dedup_by(|a, b| (*a - *b).fabs() <= F::lit(1e-12));
        for w in ts.windows(2) {
            subs.push(Sub { edge, seg: Segment::new(e.eval(w[0]), e.eval(w[1])) });
        }
    }

    // Endpoint candidates first; they also feed the pruning test.
    let mut cands: Vec<Candidate<F>> = Vec::new();
    let mut seen: Vec<Point<F>> = Vec::new();
    let push_point = |p: Point<F>,
                          prov: Provenance,
                          cands: &mut Vec<Candidate<F>>,
                          seen: &mut Vec<Point<F>>,
                          value_at: &mut dyn FnMut(&Point<F>) -> Result<F, SolverError>|
     -> Result<(), SolverError> {
        if seen.iter().any(|q| q.l1(&p) <= eps) {
            return Ok(());
        }
        seen.push(p);
        let v = value_at(&p)?;
        cands.push(Candidate { point: p, value: v, provenance: prov });
        Ok(())
    };
    for sub in &subs {
        push_point(sub.seg.a, Provenance::BoundaryPoint, &mut cands, &mut seen, &mut value_at)?;
        push_point(sub.seg.b, Provenance::BoundaryPoint, &mut cands, &mut seen, &mut value_at)?;
    }

    for sub in &subs {
        if use_pruning {
            // If a known candidate lies in every point-to-origin
            // rectangle of the subsegment (and off the subsegment), it
            // dominates the whole subsegment.
            if let Some(r) = rect_intersect(rect(&zm, &sub.seg.a), rect(&zm, &sub.seg.b)) {
                let dominated = cands.iter().any(|c| {
                    let p = &c.point;
                    p.x >= r.0 - eps
                        && p.x <= r.1 + eps
                        && p.y >= r.2 - eps
                        && p.y <= r.3 + eps
                        && sub.seg.dist_to_point(p) > eps
                });
                if dominated {
                    continue;
                }
            }
        }
        // Directional derivative along the subsegment is quadratic in the
        // segment parameter; recover it from three gradient samples.
        let dir = Point::new(sub.seg.b.x - sub.seg.a.x, sub.seg.b.y - sub.seg.a.y);
        let mut g = [F::zero(); 3];
        let samples = [F::lit(0.25), F::lit(0.5), F::lit(0.75)];
        let mut ok = true;
        for (k, &t) in samples.iter().enumerate() {
            let p = sub.seg.eval(t);
            match cardinal_areas(domain, &p, Metric::Straight, None) {
                Ok(ca) => {
                    let (gx, gy) = ca.gradient();
                    g[k] = gx * dir.x + gy * dir.y;
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        // Quadratic q(t) with q(1/4), q(1/2), q(3/4) given.
        let qa = F::lit(8.0) * (g[0] - F::lit(2.0) * g[1] + g[2]);
        let qb = F::lit(-10.0) * g[0] + F::lit(16.0) * g[1] - F::lit(6.0) * g[2];
        let qc = F::lit(3.0) * g[0] - F::lit(3.0) * g[1] + g[2];
        for t in quad_roots(qa, qb, qc, F::zero(), F::one()) {
            if t <= F::lit(1e-9) || t >= F::one() - F::lit(1e-9) {
                continue;
            }
            push_point(
                sub.seg.eval(t),
                Provenance::EdgeInterior { edge: sub.edge },
                &mut cands,
                &mut seen,
                &mut value_at,
            )?;
        }
    }

    // Axis projections of the infeasible origin onto the boundary.
    for e in domain.edges() {
        let dx = e.b.x - e.a.x;
        let dy = e.b.y - e.a.y;
        if dx.fabs() > tol {
            let t = (zm.x - e.a.x) / dx;
            if (F::zero()..=F::one()).contains(&t) {
                push_point(
                    e.eval(t),
                    Provenance::OriginProjection,
                    &mut cands,
                    &mut seen,
                    &mut value_at,
                )?;
            }
        }
        if dy.fabs() > tol {
            let t = (zm.y - e.a.y) / dy;
            if (F::zero()..=F::one()).contains(&t) {
                push_point(
                    e.eval(t),
                    Provenance::OriginProjection,
                    &mut cands,
                    &mut seen,
                    &mut value_at,
                )?;
            }
        }
    }

    Solution::from_candidates(cands, evals).ok_or(SolverError::NoCandidates)
}

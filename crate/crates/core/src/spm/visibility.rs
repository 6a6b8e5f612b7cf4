use super::SpmError;
use crate::geom::{
    dedup_ring, seg_intersections, Location, Point, PolygonalDomain, Ring, Segment,
};
use crate::scalar::Scalar;

/// Can `a` and `b` be joined by a straight segment inside the closed
/// domain? Grazing along the boundary counts as visible.
///
/// The segment is cut at every boundary crossing and each open piece is
/// classified by its midpoint.
pub fn visible<F: Scalar>(dom: &PolygonalDomain<F>, a: &Point<F>, b: &Point<F>) -> bool {
    let eps = dom.eps();
    let s = Segment::new(*a, *b);
    if s.len_l2() <= eps {
        return dom.contains(a);
    }
    let mut ts: Vec<F> = vec![F::zero(), F::one()];
    for e in dom.edges() {
        ts.extend(seg_intersections(&s, &e, eps));
    }
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ts.dedup_by(|x, y| (*x - *y).fabs() <= F::lit(1e-9));
    for w in ts.windows(2) {
        let m = s.eval((w[0] + w[1]) * F::lit(0.5));
        if dom.locate(&m) == Location::Exterior {
            return false;
        }
    }
    true
}

/// The region of the domain visible from `q`, as a single star-shaped
/// ring through `q`'s position (the ring passes through `q` itself when
/// `q` lies on the boundary).
///
/// Standard angular decomposition: between two consecutive vertex angles
/// the first boundary edge hit by a ray from `q` does not change, so each
/// wedge contributes the piece of that edge between the two bounding
/// rays. Wedges whose interior is outside the domain (possible when `q`
/// is a boundary point) are skipped, pinching the ring at `q`.
pub fn visibility_polygon<F: Scalar>(
    dom: &PolygonalDomain<F>,
    q: &Point<F>,
) -> Result<Ring<F>, SpmError> {
    let eps = dom.eps();
    let edges = dom.edges();

    let mut angles: Vec<F> = dom
        .vertices()
        .filter(|v| v.l1(q) > eps)
        .map(|v| (v.y - q.y).atan2(v.x - q.x))
        .collect();
    if angles.is_empty() {
        return Err(SpmError::DegeneratePosition {
            reason: "viewpoint coincides with every vertex".into(),
        });
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).fabs() <= F::lit(1e-12));
    if angles.len() >= 2 {
        let tau = F::lit(std::f64::consts::TAU);
        if (angles[0] + tau - *angles.last().unwrap()).fabs() <= F::lit(1e-12) {
            angles.pop();
        }
    }

    // First hit of the open ray from q in direction `dir`: (t, edge index).
    let cast = |dir: (F, F)| -> Option<(F, usize)> {
        let mut best: Option<(F, usize)> = None;
        for (idx, e) in edges.iter().enumerate() {
            let ex = e.b.x - e.a.x;
            let ey = e.b.y - e.a.y;
            let denom = dir.0 * ey - dir.1 * ex;
            if denom.fabs() <= F::lit(1e-14) {
                continue;
            }
            let rx = e.a.x - q.x;
            let ry = e.a.y - q.y;
            let t = (rx * ey - ry * ex) / denom;
            let u = (rx * dir.1 - ry * dir.0) / denom;
            let slack = F::lit(1e-9);
            if t > eps && u >= -slack && u <= F::one() + slack {
                if best.map_or(true, |(bt, _)| t < bt) {
                    best = Some((t, idx));
                }
            }
        }
        best
    };

    // Intersection of the ray at `angle` with the supporting line of edge
    // `idx`, falling back to a fresh cast when the ray grazes the edge.
    let edge_point = |angle: F, idx: usize| -> Option<Point<F>> {
        let dir = (angle.cos(), angle.sin());
        let e = &edges[idx];
        let ex = e.b.x - e.a.x;
        let ey = e.b.y - e.a.y;
        let denom = dir.0 * ey - dir.1 * ex;
        if denom.fabs() > F::lit(1e-12) {
            let rx = e.a.x - q.x;
            let ry = e.a.y - q.y;
            let t = (rx * ey - ry * ex) / denom;
            if t > F::zero() {
                let u = ((rx * dir.1 - ry * dir.0) / denom)
                    .fmax(F::zero())
                    .fmin(F::one());
                return Some(e.eval(u));
            }
        }
        cast(dir).map(|(t, _)| Point::new(q.x + t * dir.0, q.y + t * dir.1))
    };

    let m = angles.len();
    let tau = F::lit(std::f64::consts::TAU);
    let mut out: Ring<F> = Vec::new();
    let mut gap = false; // an exterior wedge separates us from the last piece
    let mut leading_gap = false; // gap seen before the first visible wedge
    let mut any = false;
    let weld = eps;

    let push = |out: &mut Ring<F>, p: Point<F>| {
        if out.last().map_or(true, |last: &Point<F>| last.l1(&p) > weld) {
            out.push(p);
        }
    };

    for k in 0..m.max(1) {
        let a0 = angles[k % m];
        let mut a1 = angles[(k + 1) % m];
        if m == 1 {
            a1 = a0 + tau;
        } else if a1 <= a0 {
            a1 += tau;
        }
        if a1 - a0 <= F::lit(1e-12) {
            continue;
        }
        let am = (a0 + a1) * F::lit(0.5);
        let dir = (am.cos(), am.sin());
        let hit = match cast(dir) {
            Some(h) => h,
            None => {
                gap = true;
                leading_gap |= !any;
                continue;
            }
        };
        let probe = Point::new(
            q.x + hit.0 * F::lit(0.5) * dir.0,
            q.y + hit.0 * F::lit(0.5) * dir.1,
        );
        if dom.locate(&probe) == Location::Exterior {
            gap = true;
            leading_gap |= !any;
            continue;
        }
        let (p0, p1) = match (edge_point(a0, hit.1), edge_point(a1, hit.1)) {
            (Some(p0), Some(p1)) => (p0, p1),
            _ => {
                gap = true;
                leading_gap |= !any;
                continue;
            }
        };
        if gap && any {
            push(&mut out, *q);
        }
        gap = false;
        any = true;
        push(&mut out, p0);
        push(&mut out, p1);
    }
    // A gap before the first visible wedge and one after the last both
    // pinch the ring at q across the angular wrap-around.
    if any && (gap || leading_gap) {
        push(&mut out, *q);
    }

    let out = dedup_ring(&out, weld);
    if out.len() < 3 {
        return Err(SpmError::DegeneratePosition {
            reason: "empty visibility region".into(),
        });
    }
    Ok(out)
}

use super::point::{Axis, Point};
use super::seg::Segment;
use crate::scalar::Scalar;

/// A polygon ring, stored without the closing vertex. Orientation carries
/// sign: counterclockwise rings have positive area, clockwise negative.
/// A domain is held as one CCW outer ring plus CW hole rings, so summing
/// signed quantities over all rings integrates over the interior.
pub type Ring<F> = Vec<Point<F>>;

/// Signed area by the shoelace formula.
pub fn ring_area<F: Scalar>(ring: &[Point<F>]) -> F {
    let mut acc = F::zero();
    for i in 0..ring.len() {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        acc += a.x * b.y - b.x * a.y;
    }
    acc * F::lit(0.5)
}

/// Signed area together with the first moments `(A, ∫x dA, ∫y dA)`.
pub fn ring_moments<F: Scalar>(ring: &[Point<F>]) -> (F, F, F) {
    let mut area = F::zero();
    let mut mx = F::zero();
    let mut my = F::zero();
    for i in 0..ring.len() {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        let c = a.x * b.y - b.x * a.y;
        area += c;
        mx += (a.x + b.x) * c;
        my += (a.y + b.y) * c;
    }
    let half = F::lit(0.5);
    let sixth = F::lit(1.0 / 6.0);
    (area * half, mx * sixth, my * sixth)
}

/// Clip a ring against the half-plane `coord(axis) <= c` (or `>= c` when
/// `keep_leq` is false). Sutherland-Hodgman against a single axis-aligned
/// line; orientation is preserved.
pub fn clip_ring_halfplane<F: Scalar>(
    ring: &[Point<F>],
    axis: Axis,
    c: F,
    keep_leq: bool,
) -> Ring<F> {
    let inside = |p: &Point<F>| {
        if keep_leq {
            p.coord(axis) <= c
        } else {
            p.coord(axis) >= c
        }
    };
    let cross_at = |a: &Point<F>, b: &Point<F>| -> Point<F> {
        match axis {
            Axis::X => {
                let t = (c - a.x) / (b.x - a.x);
                Point::new(c, a.y + t * (b.y - a.y))
            }
            Axis::Y => {
                let t = (c - a.y) / (b.y - a.y);
                Point::new(a.x + t * (b.x - a.x), c)
            }
        }
    };
    let mut out = Vec::with_capacity(ring.len() + 2);
    for i in 0..ring.len() {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        match (inside(a), inside(b)) {
            (true, true) => out.push(*b),
            (true, false) => out.push(cross_at(a, b)),
            (false, true) => {
                out.push(cross_at(a, b));
                out.push(*b);
            }
            (false, false) => {}
        }
    }
    out
}

/// Clip a ring against the half-plane `a·x + b·y + c <= 0`. Intended for
/// convex rings; rings with holes need boolean ops instead.
pub fn clip_ring_line<F: Scalar>(ring: &[Point<F>], a: F, b: F, c: F) -> Ring<F> {
    let val = |p: &Point<F>| a * p.x + b * p.y + c;
    let mut out = Vec::with_capacity(ring.len() + 2);
    for i in 0..ring.len() {
        let p = &ring[i];
        let q = &ring[(i + 1) % ring.len()];
        let (vp, vq) = (val(p), val(q));
        let cross_pt = || {
            let t = vp / (vp - vq);
            Point::new(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))
        };
        match (vp <= F::zero(), vq <= F::zero()) {
            (true, true) => out.push(*q),
            (true, false) => out.push(cross_pt()),
            (false, true) => {
                out.push(cross_pt());
                out.push(*q);
            }
            (false, false) => {}
        }
    }
    out
}

/// Exact `∫ |coord(axis) - c| dA` over the signed region described by
/// `rings`. The two half-plane clips share the line `coord = c`, so the
/// bridge edges introduced by clipping cancel and the result is exact up
/// to rounding.
pub fn ring_abs_moment<F: Scalar>(rings: &[Ring<F>], axis: Axis, c: F) -> F {
    let mut acc = F::zero();
    for keep_leq in [true, false] {
        for ring in rings {
            let clipped = clip_ring_halfplane(ring, axis, c, keep_leq);
            if clipped.len() < 3 {
                continue;
            }
            let (area, mx, my) = ring_moments(&clipped);
            let m = match axis {
                Axis::X => mx,
                Axis::Y => my,
            };
            // On the kept side, |coord - c| integrates to ±(m - c·area).
            if keep_leq {
                acc += c * area - m;
            } else {
                acc += m - c * area;
            }
        }
    }
    acc
}

/// Simplicity check: no two non-adjacent edges may intersect or touch,
/// and adjacent edges may share only their common endpoint. O(n²).
pub fn ring_is_simple<F: Scalar>(ring: &[Point<F>], eps: F) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    let seg = |i: usize| Segment::new(ring[i], ring[(i + 1) % n]);
    for i in 0..n {
        let si = seg(i);
        for j in (i + 1)..n {
            let sj = seg(j);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // The shared endpoint is fine; anything more is not.
                let shared = if j == i + 1 { ring[j] } else { ring[0] };
                let far_i = if j == i + 1 { si.a } else { si.b };
                let far_j = if j == i + 1 { sj.b } else { sj.a };
                if super::seg::point_on_segment(&far_i, &sj, eps)
                    || super::seg::point_on_segment(&far_j, &si, eps)
                {
                    let _ = shared;
                    return false;
                }
            } else if !super::seg::seg_intersections(&si, &sj, eps).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Crossing-number point-in-ring test. Points within `eps` of the
/// boundary are reported as inside; callers needing a boundary class use
/// [`super::PolygonalDomain::locate`].
pub fn point_in_ring<F: Scalar>(p: &Point<F>, ring: &[Point<F>], eps: F) -> bool {
    let n = ring.len();
    for i in 0..n {
        let s = Segment::new(ring[i], ring[(i + 1) % n]);
        if s.dist_to_point(p) <= eps {
            return true;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < xc {
                inside = !inside;
            }
        }
    }
    inside
}

/// Drop repeated and collinear-with-neighbors vertices. Used to normalize
/// rings coming out of boolean operations before further processing.
pub fn dedup_ring<F: Scalar>(ring: &[Point<F>], eps: F) -> Ring<F> {
    let mut out: Ring<F> = Vec::with_capacity(ring.len());
    for p in ring {
        if let Some(last) = out.last() {
            if last.l1(p) <= eps {
                continue;
            }
        }
        out.push(*p);
    }
    while out.len() >= 2 && out[0].l1(out.last().unwrap()) <= eps {
        out.pop();
    }
    out
}

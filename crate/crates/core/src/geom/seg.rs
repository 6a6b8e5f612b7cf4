use super::point::{cross, Point};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Segment<F> {
    pub a: Point<F>,
    pub b: Point<F>,
}

impl<F: Scalar> Segment<F> {
    pub fn new(a: Point<F>, b: Point<F>) -> Self {
        Segment { a, b }
    }

    pub fn eval(&self, t: F) -> Point<F> {
        Point::new(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )
    }

    pub fn midpoint(&self) -> Point<F> {
        self.eval(F::lit(0.5))
    }

    pub fn len_l1(&self) -> F {
        self.a.l1(&self.b)
    }

    pub fn len_l2(&self) -> F {
        ((self.b.x - self.a.x).powi(2) + (self.b.y - self.a.y).powi(2)).fsqrt()
    }

    /// Euclidean distance from `p` to this segment.
    pub fn dist_to_point(&self, p: &Point<F>) -> F {
        let dx = self.b.x - self.a.x;
        let dy = self.b.y - self.a.y;
        let len2 = dx * dx + dy * dy;
        let t = if len2 <= F::zero() {
            F::zero()
        } else {
            (((p.x - self.a.x) * dx + (p.y - self.a.y) * dy) / len2)
                .fmax(F::zero())
                .fmin(F::one())
        };
        let q = self.eval(t);
        ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).fsqrt()
    }
}

/// Does `p` lie on segment `s` within absolute tolerance `eps`
/// (Euclidean distance)?
pub fn point_on_segment<F: Scalar>(p: &Point<F>, s: &Segment<F>, eps: F) -> bool {
    s.dist_to_point(p) <= eps
}

/// Parameters `t` along `s` (in `[0, 1]`) at which `s` meets `other`,
/// including endpoint touches. A collinear overlap contributes the two
/// parameters bounding the shared portion. `eps` is an absolute Euclidean
/// tolerance.
pub fn seg_intersections<F: Scalar>(s: &Segment<F>, other: &Segment<F>, eps: F) -> Vec<F> {
    let mut out = Vec::new();
    let d1 = Point::new(s.b.x - s.a.x, s.b.y - s.a.y);
    let d2 = Point::new(other.b.x - other.a.x, other.b.y - other.a.y);
    let denom = d1.x * d2.y - d1.y * d2.x;
    let scale = d1.x.fabs() + d1.y.fabs() + d2.x.fabs() + d2.y.fabs() + F::one();

    if denom.fabs() > F::lit(1e-14) * scale * scale {
        let rx = other.a.x - s.a.x;
        let ry = other.a.y - s.a.y;
        let t = (rx * d2.y - ry * d2.x) / denom;
        let u = (rx * d1.y - ry * d1.x) / denom;
        let len1 = s.len_l2().fmax(F::lit(1e-300));
        let len2 = other.len_l2().fmax(F::lit(1e-300));
        let te = eps / len1;
        let ue = eps / len2;
        if t >= -te && t <= F::one() + te && u >= -ue && u <= F::one() + ue {
            out.push(t.fmax(F::zero()).fmin(F::one()));
        }
    } else {
        // Parallel. Check for collinear overlap.
        let off = cross(&s.a, &s.b, &other.a).fabs() / s.len_l2().fmax(F::lit(1e-300));
        if off <= eps {
            let len2 = s.len_l2().powi(2).fmax(F::lit(1e-300));
            let proj = |p: &Point<F>| {
                ((p.x - s.a.x) * d1.x + (p.y - s.a.y) * d1.y) / len2
            };
            let (mut t0, mut t1) = (proj(&other.a), proj(&other.b));
            if t0 > t1 {
                std::mem::swap(&mut t0, &mut t1);
            }
            let lo = t0.fmax(F::zero());
            let hi = t1.fmin(F::one());
            if lo <= hi {
                out.push(lo);
                out.push(hi);
            }
        }
    }
    out
}

/// Do the two segments share more than a single point? Used by the
/// bisector extractor and by simplicity checks.
pub fn collinear_overlap<F: Scalar>(
    s: &Segment<F>,
    other: &Segment<F>,
    eps: F,
) -> Option<(Point<F>, Point<F>)> {
    let d1 = Point::new(s.b.x - s.a.x, s.b.y - s.a.y);
    let d2 = Point::new(other.b.x - other.a.x, other.b.y - other.a.y);
    let denom = d1.x * d2.y - d1.y * d2.x;
    let scale = d1.x.fabs() + d1.y.fabs() + d2.x.fabs() + d2.y.fabs() + F::one();
    if denom.fabs() > F::lit(1e-12) * scale * scale {
        return None;
    }
    let len = s.len_l2().fmax(F::lit(1e-300));
    if cross(&s.a, &s.b, &other.a).fabs() / len > eps
        || cross(&s.a, &s.b, &other.b).fabs() / len > eps
    {
        return None;
    }
    let len2 = (len * len).fmax(F::lit(1e-300));
    let proj = |p: &Point<F>| ((p.x - s.a.x) * d1.x + (p.y - s.a.y) * d1.y) / len2;
    let (mut t0, mut t1) = (proj(&other.a), proj(&other.b));
    if t0 > t1 {
        std::mem::swap(&mut t0, &mut t1);
    }
    let lo = t0.fmax(F::zero());
    let hi = t1.fmin(F::one());
    if hi - lo <= eps / len {
        return None;
    }
    Some((s.eval(lo), s.eval(hi)))
}

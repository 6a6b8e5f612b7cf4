//! The average-distance objective `f(Z) = (1/mu) ∫ d(Z, p) dp`, its
//! gradient, and local cubic representations.
//!
//! Exact evaluation never meshes the domain: `∫ |x - c| dA` over any
//! polygonal region splits into two half-plane clips whose first moments
//! are shoelace sums, and the geodesic objective is the sum of such
//! moments over the cells of the shortest-path map of `Z`, each taken
//! about the cell root.

use crate::geom::{ring_abs_moment, Axis, Location, Point, PolygonalDomain, Ring};
use crate::scalar::Scalar;
use crate::spm::{build_spm, cardinal_areas, SpmEngine, SpmError};
use crate::Metric;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ObjectiveError {
    #[error(transparent)]
    Spm(#[from] SpmError),
    #[error("triangle base is not horizontal (|yA - yB| = {dy})")]
    NonHorizontalBase { dy: f64 },
    #[error("triangle unusable: {reason}")]
    DegenerateTriangle { reason: String },
    #[error("cubic interpolation system is ill-conditioned")]
    IllConditionedFit,
    #[error("cell is too thin to anchor an interpolation (extent {extent})")]
    CellTooThin { extent: f64 },
}

/// Average L1 distance from vertex `a` over the triangle `a b c`, by the
/// closed form `(|xB - xA| + |xC - xA| + |yC - yA|) / 3`.
///
/// Requires the base `a b` to be horizontal and the triangle to lie in
/// one closed x-halfplane through `a` (then `|x - xA|` is linear over
/// the triangle and the centroid rule applies).
pub fn triangle_average<F: Scalar>(
    a: &Point<F>,
    b: &Point<F>,
    c: &Point<F>,
) -> Result<F, ObjectiveError> {
    let scale = a.l1(b) + a.l1(c) + F::one();
    let eps = F::lit(1e-9) * scale;
    if (a.y - b.y).fabs() > eps {
        return Err(ObjectiveError::NonHorizontalBase {
            dy: (a.y - b.y).fabs().to_f64_lossy(),
        });
    }
    let area2 = crate::geom::cross(a, b, c).fabs();
    if area2 <= eps * eps {
        return Err(ObjectiveError::DegenerateTriangle {
            reason: "zero area".into(),
        });
    }
    if (b.x - a.x) * (c.x - a.x) < -(eps * scale) {
        return Err(ObjectiveError::DegenerateTriangle {
            reason: "apex and base on opposite x-sides of the distance vertex".into(),
        });
    }
    let la = (b.x - a.x).fabs();
    let lb = (c.x - a.x).fabs();
    let lc = (c.y - a.y).fabs();
    Ok((la + lb + lc) / F::lit(3.0))
}

/// Exact objective value at `z`.
pub fn evaluate_f<F: Scalar>(
    domain: &PolygonalDomain<F>,
    z: &Point<F>,
    metric: Metric,
    engine: Option<&SpmEngine<F>>,
) -> Result<F, ObjectiveError> {
    if domain.locate(z) == Location::Exterior {
        return Err(ObjectiveError::Spm(SpmError::PointOutsideDomain {
            x: z.x.to_f64_lossy(),
            y: z.y.to_f64_lossy(),
        }));
    }
    let mu = domain.area();
    match metric {
        Metric::Straight => {
            let rings: Vec<Ring<F>> = domain.rings().cloned().collect();
            let mx = ring_abs_moment(&rings, Axis::X, z.x);
            let my = ring_abs_moment(&rings, Axis::Y, z.y);
            Ok((mx + my) / mu)
        }
        Metric::Geodesic => {
            let owned;
            let eng = match engine {
                Some(e) => e,
                None => {
                    owned = SpmEngine::new(domain)?;
                    &owned
                }
            };
            let spm = build_spm(eng, z, false)?;
            let mut acc = F::zero();
            for cell in &spm.cells {
                acc += cell.distance_integral();
            }
            Ok(acc / mu)
        }
    }
}

/// Objective gradient at `z`, from the cardinal area decomposition.
pub fn gradient_f<F: Scalar>(
    domain: &PolygonalDomain<F>,
    z: &Point<F>,
    metric: Metric,
    engine: Option<&SpmEngine<F>>,
) -> Result<(F, F), ObjectiveError> {
    Ok(cardinal_areas(domain, z, metric, engine)?.gradient())
}

/// A separable pair of cubics `f(x, y) = f1(x) + f2(y)`: the exact shape
/// of the objective on any region where the shortest-path map structure
/// does not change. The constant term lives in `a[0]`; `b[0]` is zero.
#[derive(Clone, Copy, Debug)]
pub struct CubicPair<F> {
    pub a: [F; 4],
    pub b: [F; 4],
}

impl<F: Scalar> CubicPair<F> {
    pub fn eval(&self, x: F, y: F) -> F {
        poly3(&self.a, x) + poly3(&self.b, y)
    }

    pub fn dx(&self, x: F) -> F {
        dpoly3(&self.a, x)
    }

    pub fn dy(&self, y: F) -> F {
        dpoly3(&self.b, y)
    }

    /// Real roots of `f1'` inside `[lo, hi]`.
    pub fn dx_roots(&self, lo: F, hi: F) -> Vec<F> {
        quad_roots(
            F::lit(3.0) * self.a[3],
            F::lit(2.0) * self.a[2],
            self.a[1],
            lo,
            hi,
        )
    }

    pub fn dy_roots(&self, lo: F, hi: F) -> Vec<F> {
        quad_roots(
            F::lit(3.0) * self.b[3],
            F::lit(2.0) * self.b[2],
            self.b[1],
            lo,
            hi,
        )
    }
}

fn poly3<F: Scalar>(c: &[F; 4], x: F) -> F {
    ((c[3] * x + c[2]) * x + c[1]) * x + c[0]
}

fn dpoly3<F: Scalar>(c: &[F; 4], x: F) -> F {
    (F::lit(3.0) * c[3] * x + F::lit(2.0) * c[2]) * x + c[1]
}

/// Real roots of `a x² + b x + c` within `[lo, hi]`, tolerating a
/// slightly negative discriminant from rounding.
pub fn quad_roots<F: Scalar>(a: F, b: F, c: F, lo: F, hi: F) -> Vec<F> {
    let mut out = Vec::new();
    let scale = a.fabs().fmax(b.fabs()).fmax(c.fabs()) + F::lit(1e-300);
    let slack = F::lit(1e-12);
    if a.fabs() <= slack * scale {
        if b.fabs() > slack * scale {
            out.push(-c / b);
        }
    } else {
        let mut disc = b * b - F::lit(4.0) * a * c;
        if disc < F::zero() {
            if disc >= -slack * scale * scale {
                disc = F::zero();
            } else {
                return out;
            }
        }
        let sq = disc.fsqrt();
        // Numerically stable pairing of the two roots.
        let q = -(b + b.signum() * sq) * F::lit(0.5);
        if b == F::zero() {
            out.push(sq / (F::lit(2.0) * a));
            out.push(-sq / (F::lit(2.0) * a));
        } else {
            out.push(q / a);
            if q != F::zero() {
                out.push(c / q);
            }
        }
    }
    let pad = slack * (hi - lo).fabs().fmax(F::one());
    let mut out: Vec<F> = out
        .into_iter()
        .filter(|r| r.is_finite() && *r >= lo - pad && *r <= hi + pad)
        .map(|r| r.fmax(lo).fmin(hi))
        .collect();
    out.sort_by(|p, q| p.partial_cmp(q).unwrap());
    out.dedup_by(|p, q| (*p - *q).fabs() <= pad);
    out
}

/// Interpolate the separable cubic of a region from seven exact samples
/// around `anchor`: the anchor itself and six points on a circle of
/// radius `radius`. Retries once with rotated, shrunk sample points when
/// the linear system pivots poorly.
pub fn fit_cell_cubic<F: Scalar, E>(
    mut f: impl FnMut(Point<F>) -> Result<F, E>,
    anchor: Point<F>,
    radius: F,
) -> Result<CubicPair<F>, ObjectiveError>
where
    ObjectiveError: From<E>,
{
    if radius.to_f64_lossy() <= 0.0 {
        return Err(ObjectiveError::CellTooThin {
            extent: radius.to_f64_lossy(),
        });
    }
    for (rot, shrink) in [(0.35, 1.0), (0.9, 0.6)] {
        let mut pts = vec![anchor];
        for k in 0..6 {
            let ang = F::lit(rot + k as f64 * std::f64::consts::PI / 3.0);
            let r = radius * F::lit(shrink) * if k % 2 == 0 { F::one() } else { F::lit(0.55) };
            pts.push(Point::new(anchor.x + r * ang.cos(), anchor.y + r * ang.sin()));
        }
        let mut mat = [[F::zero(); 7]; 7];
        let mut rhs = [F::zero(); 7];
        for (i, p) in pts.iter().enumerate() {
            // Center at the anchor and scale by the radius so the system
            // is well conditioned regardless of cell size.
            let x = (p.x - anchor.x) / radius;
            let y = (p.y - anchor.y) / radius;
            mat[i] = [F::one(), x, x * x, x * x * x, y, y * y, y * y * y];
            rhs[i] = f(*p)?;
        }
        if let Some(mut sol) = solve7(mat, rhs) {
            for k in 1..4 {
                sol[k] = sol[k] / radius.powi(k as i32);
                sol[k + 3] = sol[k + 3] / radius.powi(k as i32);
            }
            // Un-center: substitute (x - ax), (y - ay) expansions.
            let (ax, ay) = (anchor.x, anchor.y);
            let cx = recenter(sol[0], sol[1], sol[2], sol[3], ax);
            let cy = recenter(F::zero(), sol[4], sol[5], sol[6], ay);
            return Ok(CubicPair {
                a: cx,
                b: cy,
            });
        }
    }
    Err(ObjectiveError::IllConditionedFit)
}

/// Expand `c0 + c1 (x-s) + c2 (x-s)² + c3 (x-s)³` in powers of `x`.
fn recenter<F: Scalar>(c0: F, c1: F, c2: F, c3: F, s: F) -> [F; 4] {
    let three = F::lit(3.0);
    [
        c0 - c1 * s + c2 * s * s - c3 * s * s * s,
        c1 - F::lit(2.0) * c2 * s + three * c3 * s * s,
        c2 - three * c3 * s,
        c3,
    ]
}

fn solve7<F: Scalar>(mut a: [[F; 7]; 7], mut b: [F; 7]) -> Option<[F; 7]> {
    let n = 7;
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].fabs() > a[piv][col].fabs() {
                piv = r;
            }
        }
        if a[piv][col].fabs() <= F::lit(1e-13) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let m = a[r][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= m * v;
            }
            let v = b[col];
            b[r] -= m * v;
        }
    }
    let mut x = [F::zero(); 7];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for c in col + 1..n {
            acc -= a[col][c] * x[c];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

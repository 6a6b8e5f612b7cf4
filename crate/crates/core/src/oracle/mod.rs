//! Brute-force numerical oracle for the average-distance objective.
//!
//! Deliberately independent of the exact machinery: containment,
//! visibility and shortest paths are re-implemented here from scratch
//! (parity containment, orientation-based segment crossing,
//! Floyd-Warshall over the vertex graph), so agreement between oracle
//! and solvers is evidence rather than tautology.
//!
//! Integration is a midpoint rule on an axis-aligned grid with 2x2
//! supersampled weights on boundary-straddling cells, and every value
//! comes with an explicit error bound.

use crate::geom::{Point, PolygonalDomain};
use crate::scalar::Scalar;
use crate::Metric;
use rayon::prelude::*;
use thiserror::Error;

pub const MIN_GRID: usize = 16;

/// Grid resolution for the oracle. `n` is the number of cells per axis.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub n: usize,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self, OracleError> {
        if n < MIN_GRID {
            return Err(OracleError::GridTooCoarse { n });
        }
        Ok(GridSpec { n })
    }
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum OracleError {
    #[error("grid resolution {n} is below the minimum of 16")]
    GridTooCoarse { n: usize },
    #[error("point ({x}, {y}) lies outside the domain")]
    PointOutsideDomain { x: f64, y: f64 },
    #[error("no feasible grid cell (grid too coarse for this domain)")]
    NoFeasibleCell,
}

/// Result of a grid search: the best candidate and the two-sided bracket
/// `[value - slack - error_bound, value + error_bound]` that must
/// contain the true optimum value.
#[derive(Clone, Copy, Debug)]
pub struct SearchResult<F> {
    pub best: Point<F>,
    pub value: F,
    /// Integration error bound of the midpoint rule.
    pub error_bound: F,
    /// Lipschitz slack covering the distance from the true optimizer to
    /// the nearest candidate.
    pub slack: F,
    pub candidates: usize,
}

impl<F: Scalar> SearchResult<F> {
    pub fn lower(&self) -> F {
        self.value - self.slack - self.error_bound
    }

    pub fn upper(&self) -> F {
        self.value + self.error_bound
    }

    pub fn brackets(&self, solver_value: F) -> bool {
        solver_value >= self.lower() && solver_value <= self.upper()
    }
}

struct Demand<F> {
    center: Point<F>,
    weight: F, // in cell-area units, 0..1
    row: usize,
}

/// Everything the oracle precomputes for one (domain, grid) pair.
pub struct OracleContext<F> {
    edges: Vec<(Point<F>, Point<F>)>,
    verts: Vec<Point<F>>,
    dist_vv: Vec<Vec<F>>,
    lo: Point<F>,
    dx: F,
    dy: F,
    n: usize,
    demand: Vec<Demand<F>>,
    /// Demand indices per grid row, ascending in x.
    rows: Vec<Vec<usize>>,
    /// Visible vertices per demand point.
    rel: Vec<Vec<usize>>,
    w_total: F,
    /// Area accounted with quantized weights that may be wrong.
    w_error: F,
    d_max: F,
    band: F,
}

impl<F: Scalar> OracleContext<F> {
    pub fn new(domain: &PolygonalDomain<F>, grid: GridSpec) -> Result<Self, OracleError> {
        let n = GridSpec::new(grid.n)?.n;
        let edges: Vec<(Point<F>, Point<F>)> =
            domain.edges().iter().map(|s| (s.a, s.b)).collect();
        let verts: Vec<Point<F>> = domain.vertices().copied().collect();
        let (lo, hi) = domain.bbox();
        let band = F::lit(1e-9) * (domain.diameter() + F::one());
        let dx = (hi.x - lo.x) / F::lit(n as f64);
        let dy = (hi.y - lo.y) / F::lit(n as f64);

        let inside = |p: &Point<F>| inside_rings(&edges, p, band);

        let nv = verts.len();
        let mut dist_vv = vec![vec![F::infinity(); nv]; nv];
        for i in 0..nv {
            dist_vv[i][i] = F::zero();
            for j in (i + 1)..nv {
                if seg_clear(&edges, &verts[i], &verts[j], band) {
                    let d = verts[i].l1(&verts[j]);
                    dist_vv[i][j] = d;
                    dist_vv[j][i] = d;
                }
            }
        }
        for k in 0..nv {
            for i in 0..nv {
                if dist_vv[i][k].is_finite() {
                    for j in 0..nv {
                        let via = dist_vv[i][k] + dist_vv[k][j];
                        if via < dist_vv[i][j] {
                            dist_vv[i][j] = via;
                        }
                    }
                }
            }
        }

        let mut demand: Vec<Demand<F>> = Vec::new();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut w_total = F::zero();
        let mut w_error = F::zero();
        let half = F::lit(0.5);
        for j in 0..n {
            for i in 0..n {
                let cx = lo.x + dx * (F::lit(i as f64) + half);
                let cy = lo.y + dy * (F::lit(j as f64) + half);
                let c = Point::new(cx, cy);
                let corners_in = [
                    (F::lit(-0.5), F::lit(-0.5)),
                    (F::lit(0.5), F::lit(-0.5)),
                    (F::lit(-0.5), F::lit(0.5)),
                    (F::lit(0.5), F::lit(0.5)),
                ]
                .iter()
                .filter(|(ox, oy)| inside(&Point::new(cx + *ox * dx, cy + *oy * dy)))
                .count();
                let center_in = inside(&c);
                let weight = if corners_in == 4 && center_in {
                    F::one()
                } else if corners_in == 0 && !center_in {
                    continue;
                } else {
                    // Straddling cell: 2x2 supersample, quarter weight per
                    // inside subcell center.
                    let sub = [
                        (F::lit(-0.25), F::lit(-0.25)),
                        (F::lit(0.25), F::lit(-0.25)),
                        (F::lit(-0.25), F::lit(0.25)),
                        (F::lit(0.25), F::lit(0.25)),
                    ]
                    .iter()
                    .filter(|(ox, oy)| inside(&Point::new(cx + *ox * dx, cy + *oy * dy)))
                    .count();
                    w_error += F::one();
                    F::lit(sub as f64) * F::lit(0.25)
                };
                if weight <= F::zero() || !center_in {
                    // A straddling cell whose center is outside cannot
                    // serve as a demand point; its weight becomes error.
                    w_error += weight;
                    continue;
                }
                rows[j].push(demand.len());
                demand.push(Demand { center: c, weight, row: j });
                w_total += weight;
            }
        }
        if demand.is_empty() {
            return Err(OracleError::NoFeasibleCell);
        }

        let rel: Vec<Vec<usize>> = demand
            .par_iter()
            .map(|d| {
                (0..nv)
                    .filter(|&v| seg_clear(&edges, &d.center, &verts[v], band))
                    .collect()
            })
            .collect();

        let graph_diam = dist_vv
            .iter()
            .flatten()
            .copied()
            .filter(|d| d.is_finite())
            .fold(F::zero(), F::fmax);
        let d_max = graph_diam + F::lit(2.0) * domain.diameter();

        Ok(OracleContext {
            edges,
            verts,
            dist_vv,
            lo,
            dx,
            dy,
            n,
            demand,
            rows,
            rel,
            w_total,
            w_error,
            d_max,
            band,
        })
    }

    pub fn cell_area(&self) -> F {
        self.dx * self.dy
    }

    /// Midpoint-rule error bound: per-cell displacement of a 1-Lipschitz
    /// (in L1) integrand, plus the mass of cells whose weight is only
    /// quantized, valued at the largest possible distance.
    pub fn error_bound(&self) -> F {
        let per_cell = (self.dx + self.dy) * F::lit(0.5);
        let frac = self.w_error * F::lit(0.25) / self.w_total.fmax(F::lit(1e-300));
        per_cell + frac * self.d_max
    }

    /// Geodesic distances from `z` to every vertex, through directly
    /// visible vertices.
    fn vertex_field(&self, z: &Point<F>) -> Vec<F> {
        let nv = self.verts.len();
        let mut out = vec![F::infinity(); nv];
        let sees: Vec<bool> = (0..nv)
            .map(|v| seg_clear(&self.edges, z, &self.verts[v], self.band))
            .collect();
        for v in 0..nv {
            for u in 0..nv {
                if sees[u] {
                    let d = z.l1(&self.verts[u]) + self.dist_vv[u][v];
                    if d < out[v] {
                        out[v] = d;
                    }
                }
            }
        }
        out
    }

    fn geodesic_to(&self, z: &Point<F>, field: &[F], idx: usize, direct: bool) -> F {
        let p = &self.demand[idx].center;
        let mut best = if direct { z.l1(p) } else { F::infinity() };
        for &v in &self.rel[idx] {
            let d = field[v] + self.verts[v].l1(p);
            if d < best {
                best = d;
            }
        }
        if best.is_infinite() {
            // Disconnected only through numerical misclassification;
            // fall back to the unconstrained relay bound.
            for (v, f) in field.iter().enumerate() {
                let d = *f + self.verts[v].l1(p);
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    /// Midpoint-rule average distance from `z`. Returns the value and
    /// its error bound.
    pub fn average_from(&self, z: &Point<F>, metric: Metric) -> Result<(F, F), OracleError> {
        if !inside_rings(&self.edges, z, self.band) {
            return Err(OracleError::PointOutsideDomain {
                x: z.x.to_f64_lossy(),
                y: z.y.to_f64_lossy(),
            });
        }
        let acc = match metric {
            Metric::Straight => self
                .demand
                .par_iter()
                .map(|d| d.weight * z.l1(&d.center))
                .reduce(F::zero, |a, b| a + b),
            Metric::Geodesic => {
                let field = self.vertex_field(z);
                let direct = self.direct_mask(z);
                (0..self.demand.len())
                    .into_par_iter()
                    .map(|i| {
                        self.demand[i].weight * self.geodesic_to(z, &field, i, direct[i])
                    })
                    .reduce(F::zero, |a, b| a + b)
            }
        };
        Ok((acc / self.w_total, self.error_bound()))
    }

    /// Which demand points does `z` see directly? Row-by-row shadow
    /// casting: each boundary edge, clipped to the horizontal strip
    /// between `z` and the row, projects from `z` to a blocked x
    /// interval on the row.
    fn direct_mask(&self, z: &Point<F>) -> Vec<bool> {
        let mut out = vec![false; self.demand.len()];
        let huge = F::lit(1e30);
        let tiny = self.band;
        for (j, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let y = self.lo.y + self.dy * (F::lit(j as f64) + F::lit(0.5));
            if (y - z.y).fabs() <= self.dy * F::lit(0.5) {
                // Degenerate strip: fall back to exact per-point tests.
                for &idx in row {
                    out[idx] = seg_clear(&self.edges, z, &self.demand[idx].center, self.band);
                }
                continue;
            }
            let (ylo, yhi) = if z.y < y { (z.y, y) } else { (y, z.y) };
            let mut blocked: Vec<(F, F)> = Vec::new();
            for (a, b) in &self.edges {
                // Clip the edge to the strip (ylo, yhi).
                let (mut p, mut q) = (*a, *b);
                if (p.y < ylo && q.y < ylo) || (p.y > yhi && q.y > yhi) {
                    continue;
                }
                if (q.y - p.y).fabs() > tiny {
                    let clip = |s: Point<F>, t: Point<F>, yc: F| -> Point<F> {
                        let u = (yc - s.y) / (t.y - s.y);
                        Point::new(s.x + u * (t.x - s.x), yc)
                    };
                    if p.y < ylo {
                        p = clip(p, q, ylo);
                    } else if p.y > yhi {
                        p = clip(p, q, yhi);
                    }
                    if q.y < ylo {
                        q = clip(q, p, ylo);
                    } else if q.y > yhi {
                        q = clip(q, p, yhi);
                    }
                } else if p.y < ylo || p.y > yhi {
                    continue;
                }
                let proj = |v: Point<F>| -> F {
                    let den = v.y - z.y;
                    if den.fabs() <= tiny {
                        if v.x >= z.x {
                            huge
                        } else {
                            -huge
                        }
                    } else {
                        z.x + (v.x - z.x) * (y - z.y) / den
                    }
                };
                let (s0, s1) = (proj(p), proj(q));
                blocked.push((s0.fmin(s1), s0.fmax(s1)));
            }
            blocked.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            // Merge and test row points in one sweep (rows are x-sorted).
            let mut merged: Vec<(F, F)> = Vec::new();
            for iv in blocked {
                match merged.last_mut() {
                    Some(last) if iv.0 <= last.1 => last.1 = last.1.fmax(iv.1),
                    _ => merged.push(iv),
                }
            }
            let mut mi = 0usize;
            for &idx in row {
                let x = self.demand[idx].center.x;
                while mi < merged.len() && merged[mi].1 < x {
                    mi += 1;
                }
                let hit = mi < merged.len() && merged[mi].0 < x && x < merged[mi].1;
                out[idx] = !hit;
            }
        }
        out
    }

    /// Minimize the midpoint-rule average over a lattice of feasible
    /// demand centers. For the straight metric the objective separates
    /// and every center is a candidate; for the geodesic metric the
    /// candidate lattice is decimated (the reported slack accounts for
    /// its pitch).
    pub fn search(&self, metric: Metric) -> Result<SearchResult<F>, OracleError> {
        match metric {
            Metric::Straight => self.search_straight(),
            Metric::Geodesic => self.search_geodesic(),
        }
    }

    fn search_straight(&self) -> Result<SearchResult<F>, OracleError> {
        // Marginal weighted histograms make the separable objective O(n²).
        let n = self.n;
        let mut hx = vec![F::zero(); n];
        let mut hy = vec![F::zero(); n];
        for d in &self.demand {
            let i = (((d.center.x - self.lo.x) / self.dx) - F::lit(0.5))
                .round()
                .to_f64_lossy() as usize;
            hx[i.min(n - 1)] += d.weight;
            hy[d.row] += d.weight;
        }
        let cost = |h: &[F], pitch: F, origin: F| -> Vec<F> {
            let centers: Vec<F> = (0..n)
                .map(|i| origin + pitch * (F::lit(i as f64) + F::lit(0.5)))
                .collect();
            (0..n)
                .map(|i| {
                    let mut acc = F::zero();
                    for k in 0..n {
                        acc += h[k] * (centers[i] - centers[k]).fabs();
                    }
                    acc
                })
                .collect()
        };
        let gx = cost(&hx, self.dx, self.lo.x);
        let gy = cost(&hy, self.dy, self.lo.y);
        let mut best: Option<(F, Point<F>)> = None;
        for d in &self.demand {
            let i = (((d.center.x - self.lo.x) / self.dx) - F::lit(0.5))
                .round()
                .to_f64_lossy() as usize;
            let v = (gx[i.min(n - 1)] + gy[d.row]) / self.w_total;
            if best.map_or(true, |(bv, _)| v < bv) {
                best = Some((v, d.center));
            }
        }
        let (value, best) = best.ok_or(OracleError::NoFeasibleCell)?;
        Ok(SearchResult {
            best,
            value,
            error_bound: self.error_bound(),
            slack: F::lit(2.0) * (self.dx + self.dy),
            candidates: self.demand.len(),
        })
    }

    fn search_geodesic(&self) -> Result<SearchResult<F>, OracleError> {
        let stride = (self.n + 47) / 48;
        let cands: Vec<usize> = (0..self.demand.len())
            .filter(|&i| {
                let d = &self.demand[i];
                let col = (((d.center.x - self.lo.x) / self.dx) - F::lit(0.5))
                    .round()
                    .to_f64_lossy() as usize;
                d.row % stride == 0 && col % stride == 0
            })
            .collect();
        if cands.is_empty() {
            return Err(OracleError::NoFeasibleCell);
        }
        let evaluated: Vec<(F, Point<F>)> = cands
            .par_iter()
            .map(|&i| {
                let z = self.demand[i].center;
                let field = self.vertex_field(&z);
                let direct = self.direct_mask(&z);
                let mut acc = F::zero();
                for k in 0..self.demand.len() {
                    acc += self.demand[k].weight * self.geodesic_to(&z, &field, k, direct[k]);
                }
                (acc / self.w_total, z)
            })
            .collect();
        let (value, best) = evaluated
            .into_iter()
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
            .ok_or(OracleError::NoFeasibleCell)?;
        Ok(SearchResult {
            best,
            value,
            error_bound: self.error_bound(),
            slack: F::lit(2.0 * stride as f64) * (self.dx + self.dy),
            candidates: cands.len(),
        })
    }
}

/// Midpoint-rule average distance from `z`, with error bound.
pub fn integrate_average<F: Scalar>(
    domain: &PolygonalDomain<F>,
    z: &Point<F>,
    metric: Metric,
    grid: GridSpec,
) -> Result<(F, F), OracleError> {
    OracleContext::new(domain, grid)?.average_from(z, metric)
}

/// Best feasible grid candidate with a two-sided optimum bracket.
pub fn grid_search_optimum<F: Scalar>(
    domain: &PolygonalDomain<F>,
    metric: Metric,
    grid: GridSpec,
) -> Result<SearchResult<F>, OracleError> {
    OracleContext::new(domain, grid)?.search(metric)
}

/// Parity containment over all boundary edges at once: odd crossing
/// count means inside the outer ring and outside every hole. Points
/// within `band` of an edge count as inside (the domain is closed).
fn inside_rings<F: Scalar>(edges: &[(Point<F>, Point<F>)], p: &Point<F>, band: F) -> bool {
    let mut crossings = 0usize;
    for (a, b) in edges {
        if (a.y > p.y) != (b.y > p.y) {
            let xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < xc {
                crossings += 1;
            }
        }
    }
    if crossings % 2 == 1 {
        return true;
    }
    edges.iter().any(|(a, b)| dist_point_seg(p, a, b) <= band)
}

fn dist_point_seg<F: Scalar>(p: &Point<F>, a: &Point<F>, b: &Point<F>) -> F {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let len2 = dx * dx + dy * dy;
    let t = if len2 <= F::zero() {
        F::zero()
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).fmax(F::zero()).fmin(F::one())
    };
    let qx = a.x + t * dx;
    let qy = a.y + t * dy;
    ((p.x - qx).powi(2) + (p.y - qy).powi(2)).fsqrt()
}

/// Segment visibility: no proper crossing with any boundary edge, and
/// seven interior sample points all inside the domain (the samples catch
/// passages that squeeze between vertices without properly crossing).
fn seg_clear<F: Scalar>(
    edges: &[(Point<F>, Point<F>)],
    a: &Point<F>,
    b: &Point<F>,
    band: F,
) -> bool {
    let orient = |p: &Point<F>, q: &Point<F>, r: &Point<F>| -> F {
        (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    };
    let scale = a.l1(b) + F::one();
    let tol = band * scale.fmax(F::one());
    for (u, v) in edges {
        let o1 = orient(a, b, u);
        let o2 = orient(a, b, v);
        let o3 = orient(u, v, a);
        let o4 = orient(u, v, b);
        if o1 * o2 < -tol * tol && o3 * o4 < -tol * tol {
            return false;
        }
    }
    for k in 1..8 {
        let t = F::lit(k as f64 / 8.0);
        let m = Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        if !inside_rings(edges, &m, band) {
            return false;
        }
    }
    true
}

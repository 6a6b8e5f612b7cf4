use super::bisector::{extract_bisectors, BisectorChain, RootId};
use super::engine::SpmEngine;
use super::visibility::visibility_polygon;
use super::SpmError;
use crate::geom::{ring_area, ring_moments, Point, Ring};
use crate::scalar::Scalar;
use geo::BooleanOps;

pub static DIFF_OPS: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);
pub static DIFF_NS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);

/// One cell of a shortest-path map. Every point `p` of the cell has
/// geodesic distance `root_dist + |p - root_point|₁` to the source.
/// The cell rooted at the source itself is stored split into its four
/// axis quadrants (`quadrant` gives the signs of `p - source`), so that
/// within every stored cell the distance is affine in x and in y.
#[derive(Clone, Debug)]
pub struct SpmCell<F: Scalar> {
    pub root: RootId,
    pub root_point: Point<F>,
    pub root_dist: F,
    pub quadrant: Option<(i8, i8)>,
    pub region: geo::MultiPolygon<F>,
}

#[derive(Clone, Debug)]
pub struct ShortestPathMap<F: Scalar> {
    pub source: Point<F>,
    pub cells: Vec<SpmCell<F>>,
    pub bisectors: Vec<BisectorChain<F>>,
    /// Total boundary vertex count over all cells, a proxy for the
    /// combinatorial size of the map.
    pub complexity: usize,
}

impl<F: Scalar> SpmCell<F> {
    /// Cell boundary as signed rings: exteriors CCW, holes CW.
    pub fn signed_rings(&self) -> Vec<Ring<F>> {
        signed_rings(&self.region)
    }

    pub fn area(&self) -> F {
        self.signed_rings()
            .iter()
            .map(|r| ring_area(r))
            .fold(F::zero(), |a, b| a + b)
    }

    /// `∫ d(source, p) dp` over the cell: distance-at-root times area
    /// plus the two absolute first moments about the root.
    pub fn distance_integral(&self) -> F {
        let rings = self.signed_rings();
        let mut acc = F::zero();
        for ring in &rings {
            let (area, _, _) = ring_moments(ring);
            acc += self.root_dist * area;
        }
        acc += crate::geom::ring_abs_moment(&rings, crate::geom::Axis::X, self.root_point.x);
        acc += crate::geom::ring_abs_moment(&rings, crate::geom::Axis::Y, self.root_point.y);
        acc
    }
}

pub(crate) fn ring_to_poly<F: Scalar>(ring: &[Point<F>]) -> geo::Polygon<F> {
    // Micro-edges (left behind when a clip line passes essentially through
    // a ring corner) derail the boolean kernel's snapping; weld them away
    // before anything reaches it.
    let scale = ring
        .iter()
        .map(|p| p.x.fabs().fmax(p.y.fabs()))
        .fold(F::one(), F::fmax);
    let weld = F::lit(1e-12) * scale;
    let mut pts: Vec<Point<F>> = Vec::with_capacity(ring.len());
    for p in ring {
        if pts.last().map_or(true, |q: &Point<F>| q.l1(p) > weld) {
            pts.push(*p);
        }
    }
    while pts.len() >= 2 && pts[0].l1(pts.last().unwrap()) <= weld {
        pts.pop();
    }
    let coords: Vec<geo::Coord<F>> = pts.iter().map(|p| geo::Coord { x: p.x, y: p.y }).collect();
    geo::Polygon::new(geo::LineString::from(coords), vec![])
}

pub(crate) fn rings_to_multi<F: Scalar>(rings: &[Ring<F>]) -> geo::MultiPolygon<F> {
    geo::MultiPolygon(rings.iter().map(|r| ring_to_poly(r)).collect())
}

pub(crate) fn line_string_ring<F: Scalar>(ls: &geo::LineString<F>) -> Ring<F> {
    let mut out: Ring<F> = ls.0.iter().map(|c| Point::new(c.x, c.y)).collect();
    if out.len() >= 2 && out[0] == *out.last().unwrap() {
        out.pop();
    }
    out
}

/// Extract rings with normalized winding: exteriors CCW, holes CW.
pub(crate) fn signed_rings<F: Scalar>(mp: &geo::MultiPolygon<F>) -> Vec<Ring<F>> {
    let mut out = Vec::new();
    for poly in &mp.0 {
        let mut ext = line_string_ring(poly.exterior());
        if ext.len() < 3 {
            continue;
        }
        if ring_area(&ext) < F::zero() {
            ext.reverse();
        }
        out.push(ext);
        for hole in poly.interiors() {
            let mut h = line_string_ring(hole);
            if h.len() < 3 {
                continue;
            }
            if ring_area(&h) > F::zero() {
                h.reverse();
            }
            out.push(h);
        }
    }
    out
}

pub(crate) fn multi_area<F: Scalar>(mp: &geo::MultiPolygon<F>) -> F {
    signed_rings(mp)
        .iter()
        .map(|r| ring_area(r))
        .fold(F::zero(), |a, b| a + b)
}

/// A visibility polygon may pass through its viewpoint several times
/// (pinches at a boundary viewpoint). Split such a ring into one simple
/// ring per pinch so the boolean kernel only ever sees simple input.
pub(crate) fn pinched_multi<F: Scalar>(
    ring: &Ring<F>,
    q: &Point<F>,
    eps: F,
) -> geo::MultiPolygon<F> {
    rings_to_multi(&split_pinched(ring, q, eps))
}

fn split_pinched<F: Scalar>(ring: &Ring<F>, q: &Point<F>, eps: F) -> Vec<Ring<F>> {
    let hits: Vec<usize> = (0..ring.len()).filter(|&i| ring[i].l1(q) <= eps).collect();
    if hits.len() <= 1 {
        return vec![ring.clone()];
    }
    let mut out = Vec::new();
    for w in 0..hits.len() {
        let start = hits[w];
        let end = hits[(w + 1) % hits.len()];
        let mut piece: Ring<F> = vec![ring[start]];
        let mut i = (start + 1) % ring.len();
        while i != end {
            piece.push(ring[i]);
            i = (i + 1) % ring.len();
        }
        if piece.len() >= 3 && ring_area(&piece).fabs() > eps * eps {
            out.push(piece);
        }
    }
    out
}

struct Root<F: Scalar> {
    id: RootId,
    point: Point<F>,
    dist: F,
    vis: geo::MultiPolygon<F>,
}

/// Region of the plane (restricted to `rect_bounds`) where root `b`
/// strictly beats root `a`, under the deterministic tie-breaks: geodesic
/// distance, then straight-line distance to the root, then root order.
///
/// Within each cell of the 3x3 grid cut by the axis lines through both
/// roots, the distance difference is affine, so each piece is a clipped
/// rectangle.
fn beats_pieces<F: Scalar>(
    b: (&Point<F>, F, usize),
    a: (&Point<F>, F, usize),
    bounds: (Point<F>, Point<F>),
    tie_eps: F,
) -> Vec<Ring<F>> {
    let (lo, hi) = bounds;
    let mut xs = vec![lo.x, hi.x, b.0.x, a.0.x];
    let mut ys = vec![lo.y, hi.y, b.0.y, a.0.y];
    for v in [&mut xs, &mut ys] {
        v.retain(|c| c.is_finite());
        v.sort_by(|p, q| p.partial_cmp(q).unwrap());
        v.dedup_by(|p, q| (*p - *q).fabs() <= F::lit(0.0));
    }
    let mut out = Vec::new();
    for ix in 0..xs.len() - 1 {
        for iy in 0..ys.len() - 1 {
            let (x0, x1) = (xs[ix], xs[ix + 1]);
            let (y0, y1) = (ys[iy], ys[iy + 1]);
            if x1 <= x0 || y1 <= y0 || x0 < lo.x || x1 > hi.x || y0 < lo.y || y1 > hi.y {
                continue;
            }
            let xm = (x0 + x1) * F::lit(0.5);
            let ym = (y0 + y1) * F::lit(0.5);
            let sgn = |v: F| if v >= F::zero() { F::one() } else { -F::one() };
            let (sbx, sby) = (sgn(xm - b.0.x), sgn(ym - b.0.y));
            let (sax, say) = (sgn(xm - a.0.x), sgn(ym - a.0.y));
            let ca = sbx - sax;
            let cb = sby - say;
            let rect: Ring<F> = vec![
                Point::new(x0, y0),
                Point::new(x1, y0),
                Point::new(x1, y1),
                Point::new(x0, y1),
            ];
            if ca != F::zero() || cb != F::zero() {
                let cc = b.1 - a.1 - sbx * b.0.x - sby * b.0.y + sax * a.0.x + say * a.0.y;
                let clipped = crate::geom::clip_ring_line(&rect, ca, cb, cc);
                if clipped.len() >= 3 && ring_area(&clipped).fabs() > F::zero() {
                    out.push(clipped);
                }
            } else {
                // The geodesic difference is constant on this grid cell.
                let delta = b.1 - a.1 - sbx * b.0.x - sby * b.0.y + sax * a.0.x + say * a.0.y;
                let wins = if delta < -tie_eps {
                    true
                } else if delta > tie_eps {
                    false
                } else {
                    // Same geodesic distance everywhere here: fall back to
                    // straight-line distance to the roots, then root order.
                    let plain = -sbx * b.0.x - sby * b.0.y + sax * a.0.x + say * a.0.y;
                    if plain < -tie_eps {
                        true
                    } else if plain > tie_eps {
                        false
                    } else {
                        b.2 < a.2
                    }
                };
                if wins {
                    out.push(rect);
                }
            }
        }
    }
    out
}

/// Build the shortest-path map rooted at `z`. `with_bisectors` controls
/// whether bisector chains are extracted and classified into watersheds;
/// objective evaluation only needs the cells and skips that cost.
pub fn build_spm<F: Scalar>(
    engine: &SpmEngine<F>,
    z: &Point<F>,
    with_bisectors: bool,
) -> Result<ShortestPathMap<F>, SpmError> {
    let dom = &engine.domain;
    let field = engine.source_field(z)?;
    let eps = dom.eps();
    let tie_eps = eps;
    let (blo, bhi) = dom.bbox();
    let margin = F::one() + dom.diameter() * F::lit(0.01);
    let bounds = (
        Point::new(blo.x - margin, blo.y - margin),
        Point::new(bhi.x + margin, bhi.y + margin),
    );
    // The boolean kernel snaps to a fixed grid (~2⁻³⁰ relative), which can
    // leave one-grid-wide slivers along shared cell boundaries. Anything
    // below this floor is noise, not a real cell piece.
    let area_floor = F::lit(1e-8) * (dom.diameter() + F::one()).powi(2);

    let src_ring = visibility_polygon(dom, z)?;
    let mut roots: Vec<Root<F>> = Vec::with_capacity(engine.vertex_count() + 1);
    roots.push(Root {
        id: RootId::Source,
        point: *z,
        dist: F::zero(),
        vis: pinched_multi(&src_ring, z, eps),
    });
    for (v, pt) in engine.verts.iter().enumerate() {
        roots.push(Root {
            id: RootId::Vertex(v),
            point: *pt,
            dist: field.dist[v],
            vis: engine.vis_multi(v).clone(),
        });
    }

    // Opponent order: nearer roots carve most of the cell away early.
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| roots[i].dist.partial_cmp(&roots[j].dist).unwrap());
    let root_rings: Vec<Vec<Ring<F>>> = roots.iter().map(|r| signed_rings(&r.vis)).collect();
    let root_bbs: Vec<Option<(Point<F>, Point<F>)>> =
        roots.iter().map(|r| region_bbox(&r.vis)).collect();

    let mut cells: Vec<SpmCell<F>> = Vec::new();
    for (ri, root) in roots.iter().enumerate() {
        let mut bb_r = root_bbs[ri];
        let mut region = root.vis.clone();
        for &oi in &order {
            if oi == ri {
                continue;
            }
            if region.0.is_empty() {
                break;
            }
            let opp = &roots[oi];
            // The opponent can only claim ground inside its own
            // visibility polygon; disjoint bboxes mean no contest.
            if let (Some((clo, chi)), Some((olo, ohi))) = (bb_r, root_bbs[oi]) {
                if olo.x > chi.x + eps
                    || ohi.x < clo.x - eps
                    || olo.y > chi.y + eps
                    || ohi.y < clo.y - eps
                {
                    continue;
                }
            }
            // Cheap lower bound on (g_opp - g_root) over the root's
            // visibility bbox; positive means the opponent cannot win
            // anywhere inside and the boolean op can be skipped.
            if let Some((clo, chi)) = bb_r {
                let min_opp = opp.dist + bbox_l1_min(&opp.point, clo, chi);
                let max_root = root.dist + bbox_l1_max(&root.point, clo, chi);
                if min_opp > max_root + eps {
                    continue;
                }
            }
            // Only area inside the root's visibility bbox can be carved
            // away, so the beats region is built over that box alone.
            let opp_bounds = match bb_r {
                Some((clo, chi)) => (
                    Point::new(clo.x - eps, clo.y - eps),
                    Point::new(chi.x + eps, chi.y + eps),
                ),
                None => bounds,
            };
            let pieces = beats_pieces(
                (&opp.point, opp.dist, oi),
                (&root.point, root.dist, ri),
                opp_bounds,
                tie_eps,
            );
            if pieces.is_empty() {
                continue;
            }
            // Each piece is convex, so the opponent's claim inside it is
            // an exact Sutherland-Hodgman clip; only the final subtraction
            // goes through the boolean kernel, once per opponent. One
            // opponent's pieces tile disjoint grid cells, so its cut rings
            // never overlap (the kernel's even-odd clip fill would cancel
            // overlapping rings). Batching all opponents into one boolean
            // op under a winding fill was tried and is far slower: the
            // heavily-overlapping claims blow up the intersection graph.
            let mut cut_rings: Vec<Ring<F>> = Vec::new();
            for piece in &pieces {
                // A clip line through a piece corner can leave a ~1e-16
                // edge whose normal is numeric noise; clipping by it cuts
                // along a garbage line. Degenerate edges carry no area,
                // skip them.
                let edge_floor = piece
                    .iter()
                    .map(|p| p.x.fabs() + p.y.fabs())
                    .fold(F::one(), F::fmax)
                    * F::lit(1e-12);
                if ring_area(piece).fabs() <= edge_floor * edge_floor {
                    continue;
                }
                for ring in &root_rings[oi] {
                    let mut r = ring.clone();
                    let mut clipped = false;
                    for k in 0..piece.len() {
                        let a = piece[k];
                        let b = piece[(k + 1) % piece.len()];
                        let (dx, dy) = (b.x - a.x, b.y - a.y);
                        if dx.fabs() + dy.fabs() <= edge_floor {
                            continue;
                        }
                        clipped = true;
                        r = crate::geom::clip_ring_line(&r, dy, -dx, dx * a.y - dy * a.x);
                        if r.len() < 3 {
                            break;
                        }
                    }
                    if !clipped {
                        continue;
                    }
                    if r.len() >= 3 && ring_area(&r).fabs() > F::zero() {
                        cut_rings.push(r);
                    }
                }
            }
            // Only rings that reach into the current (shrinking) region
            // bbox can remove anything.
            if let Some((clo, chi)) = bb_r {
                cut_rings.retain(|r| {
                    let mut rlo = r[0];
                    let mut rhi = r[0];
                    for p in r {
                        rlo.x = rlo.x.fmin(p.x);
                        rlo.y = rlo.y.fmin(p.y);
                        rhi.x = rhi.x.fmax(p.x);
                        rhi.y = rhi.y.fmax(p.y);
                    }
                    rhi.x >= clo.x - eps
                        && rlo.x <= chi.x + eps
                        && rhi.y >= clo.y - eps
                        && rlo.y <= chi.y + eps
                });
            }
            if cut_rings.is_empty() {
                continue;
            }
            region = region.difference(&rings_to_multi(&cut_rings));
            bb_r = region_bbox(&region);
        }
        region.0.retain(|p| {
            multi_area(&geo::MultiPolygon(vec![p.clone()])).fabs() > area_floor
        });
        if region.0.is_empty() {
            continue;
        }
        if root.id == RootId::Source {
            // Split the source cell at the axis lines through z, so every
            // stored cell has affine distance in each coordinate. Done with
            // exact half-plane clips rather than the boolean kernel, which
            // snaps coordinates and would perturb this cell's moments.
            let src_rings = signed_rings(&region);
            for (qx, qy) in [(-1i8, -1i8), (1, -1), (-1, 1), (1, 1)] {
                let clipped: Vec<Ring<F>> = src_rings
                    .iter()
                    .map(|r| {
                        let r = crate::geom::clip_ring_halfplane(r, crate::geom::Axis::X, z.x, qx < 0);
                        crate::geom::clip_ring_halfplane(&r, crate::geom::Axis::Y, z.y, qy < 0)
                    })
                    .filter(|r| r.len() >= 3 && ring_area(r).fabs() > area_floor)
                    .collect();
                let part = assemble_multi(&clipped);
                if !part.0.is_empty() && multi_area(&part).fabs() > area_floor {
                    cells.push(SpmCell {
                        root: root.id,
                        root_point: root.point,
                        root_dist: root.dist,
                        quadrant: Some((qx, qy)),
                        region: part,
                    });
                }
            }
        } else {
            cells.push(SpmCell {
                root: root.id,
                root_point: root.point,
                root_dist: root.dist,
                quadrant: None,
                region,
            });
        }
    }

    let complexity = cells
        .iter()
        .map(|c| c.signed_rings().iter().map(|r| r.len()).sum::<usize>())
        .sum();
    let bisectors = if with_bisectors {
        extract_bisectors(engine, &field, &cells)?
    } else {
        Vec::new()
    };
    Ok(ShortestPathMap { source: *z, cells, bisectors, complexity })
}

/// `region` minus the union of `cuts`, in one pass through the boolean
/// kernel. The cut rings may overlap each other, so the operation runs
/// under a winding fill rule: all rings here are wound CCW for exteriors
/// (winding -1 in the kernel's orientation convention, hence `Negative`),
/// and overlapping cuts deepen the winding instead of cancelling the way
/// the default even-odd rule would.
fn difference_winding<F: Scalar>(
    region: &geo::MultiPolygon<F>,
    cuts: &[Ring<F>],
) -> geo::MultiPolygon<F> {
    use i_overlay::core::fill_rule::FillRule;
    use i_overlay::core::overlay_rule::OverlayRule;
    use i_overlay::float::single::SingleFloatOverlay;
    let mut subj: Vec<Vec<[F; 2]>> = Vec::new();
    for poly in &region.0 {
        for ls in std::iter::once(poly.exterior()).chain(poly.interiors()) {
            if ls.0.len() < 4 {
                continue;
            }
            // geo rings are explicitly closed; the kernel closes implicitly.
            subj.push(ls.0[..ls.0.len() - 1].iter().map(|c| [c.x, c.y]).collect());
        }
    }
    // Weld out duplicate/micro vertices exactly as `ring_to_poly` would;
    // degenerate repeats derail the kernel's segment graph.
    let clip: Vec<Vec<[F; 2]>> = cuts
        .iter()
        .filter_map(|r| {
            let poly = ring_to_poly(r);
            let ls = poly.exterior();
            (ls.0.len() >= 4)
                .then(|| ls.0[..ls.0.len() - 1].iter().map(|c| [c.x, c.y]).collect())
        })
        .collect();
    let shapes = subj.overlay(&clip, OverlayRule::Difference, FillRule::Negative);
    geo::MultiPolygon(
        shapes
            .into_iter()
            .map(|shape| {
                // Kernel output winds opposite to geo's convention.
                let mut rings = shape.into_iter().map(|path| {
                    let mut coords: Vec<geo::Coord<F>> = path
                        .into_iter()
                        .rev()
                        .map(|p| geo::Coord { x: p[0], y: p[1] })
                        .collect();
                    if let Some(&first) = coords.first() {
                        coords.push(first);
                    }
                    geo::LineString(coords)
                });
                let ext = rings.next().unwrap_or(geo::LineString(vec![]));
                geo::Polygon::new(ext, rings.collect())
            })
            .collect(),
    )
}

/// Group signed rings back into polygons: each CW hole is attached to the
/// smallest CCW exterior that contains it.
fn assemble_multi<F: Scalar>(rings: &[Ring<F>]) -> geo::MultiPolygon<F> {
    let mut exteriors: Vec<(Ring<F>, F, Vec<geo::LineString<F>>)> = Vec::new();
    let mut holes: Vec<Ring<F>> = Vec::new();
    for r in rings {
        if ring_area(r) >= F::zero() {
            let a = ring_area(r);
            exteriors.push((r.clone(), a, Vec::new()));
        } else {
            holes.push(r.clone());
        }
    }
    for h in holes {
        let probe = h[0];
        let mut best: Option<usize> = None;
        for (i, (ext, a, _)) in exteriors.iter().enumerate() {
            if crate::geom::point_in_ring(&probe, ext, F::zero())
                && best.map_or(true, |j| *a < exteriors[j].1)
            {
                best = Some(i);
            }
        }
        if let Some(i) = best {
            let coords: Vec<geo::Coord<F>> =
                h.iter().map(|p| geo::Coord { x: p.x, y: p.y }).collect();
            exteriors[i].2.push(geo::LineString::from(coords));
        }
    }
    geo::MultiPolygon(
        exteriors
            .into_iter()
            .map(|(ext, _, ints)| {
                let coords: Vec<geo::Coord<F>> =
                    ext.iter().map(|p| geo::Coord { x: p.x, y: p.y }).collect();
                geo::Polygon::new(geo::LineString::from(coords), ints)
            })
            .collect(),
    )
}

fn region_bbox<F: Scalar>(mp: &geo::MultiPolygon<F>) -> Option<(Point<F>, Point<F>)> {
    let mut lo = Point::new(F::infinity(), F::infinity());
    let mut hi = Point::new(F::neg_infinity(), F::neg_infinity());
    let mut any = false;
    for poly in &mp.0 {
        for c in &poly.exterior().0 {
            lo.x = lo.x.fmin(c.x);
            lo.y = lo.y.fmin(c.y);
            hi.x = hi.x.fmax(c.x);
            hi.y = hi.y.fmax(c.y);
            any = true;
        }
    }
    any.then_some((lo, hi))
}

fn bbox_l1_min<F: Scalar>(p: &Point<F>, lo: Point<F>, hi: Point<F>) -> F {
    let dx = (lo.x - p.x).fmax(p.x - hi.x).fmax(F::zero());
    let dy = (lo.y - p.y).fmax(p.y - hi.y).fmax(F::zero());
    dx + dy
}

fn bbox_l1_max<F: Scalar>(p: &Point<F>, lo: Point<F>, hi: Point<F>) -> F {
    let dx = (p.x - lo.x).fabs().fmax((hi.x - p.x).fabs());
    let dy = (p.y - lo.y).fabs().fmax((hi.y - p.y).fabs());
    dx + dy
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winding_difference_unions_overlapping_cuts() {
        let sq: Ring<f64> = vec![
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.0, 4.0),
            Point::new(0.0, 4.0),
        ];
        let region = rings_to_multi(&[sq]);
        let cut1: Ring<f64> = vec![
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(3.0, 2.0),
            Point::new(0.0, 2.0),
        ];
        let cut2: Ring<f64> = vec![
            Point::new(1.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.0, 2.0),
            Point::new(1.0, 2.0),
        ];
        let out = difference_winding(&region, &[cut1, cut2]);
        let a = multi_area(&out);
        assert!((a - 8.0).abs() < 1e-9, "area {a}");
    }
}

#[cfg(test)]
mod dbg_tests {
    use super::*;
    use crate::spm::engine::SpmEngine;

    #[test]
    fn dbg_lshape_v3() {
        let dom = crate::instances::l_shape().domain::<f64>().unwrap();
        let engine = SpmEngine::new(&dom).unwrap();
        let z = Point::new(0.75, 0.75);
        let field = engine.source_field(&z).unwrap();
        let v = 3usize;
        let vp = engine.verts[v];
        let vis = engine.vis_multi(v).clone();
        println!("v3 point {:?} dist {}", vp, field.dist[v]);
        println!("vis area {}", multi_area(&vis));
        let bb = region_bbox(&vis).unwrap();
        let eps = dom.eps();
        let bounds = (
            Point::new(bb.0.x - eps, bb.0.y - eps),
            Point::new(bb.1.x + eps, bb.1.y + eps),
        );
        // opponent = source
        let pieces = beats_pieces((&z, 0.0, 0), (&vp, field.dist[v], 4), bounds, eps);
        println!("pieces {}", pieces.len());
        for p in &pieces {
            println!("  piece area {:.6} {:?}", ring_area(p), p);
        }
        let rings = signed_rings(&ring_to_poly(&crate::spm::visibility_polygon(&dom, &z).unwrap()).into());
        let src_rings: Vec<Ring<f64>> = rings;
        let mut cuts: Vec<Ring<f64>> = Vec::new();
        for piece in &pieces {
            let edge_floor = piece.iter().map(|p| p.x.abs() + p.y.abs()).fold(1.0f64, f64::max) * 1e-12;
            if ring_area(piece).abs() <= edge_floor * edge_floor { continue; }
            for ring in &src_rings {
                let mut r = ring.clone();
                let mut clipped = false;
                for k in 0..piece.len() {
                    let a = piece[k];
                    let b = piece[(k + 1) % piece.len()];
                    let (dx, dy) = (b.x - a.x, b.y - a.y);
                    if dx.abs() + dy.abs() <= edge_floor { continue; }
                    clipped = true;
                    r = crate::geom::clip_ring_line(&r, dy, -dx, dx * a.y - dy * a.x);
                    if r.len() < 3 { break; }
                }
                if !clipped { continue; }
                if r.len() >= 3 && ring_area(&r).abs() > 0.0 {
                    println!("  cut area {:.6} {:?}", ring_area(&r), r);
                    cuts.push(r);
                }
            }
        }
        let out = difference_winding(&vis, &cuts);
        println!("after diff area {}", multi_area(&out));
        for r in signed_rings(&out) {
            println!("  out ring area {:.6} {:?}", ring_area(&r), r);
        }
        {
            use i_overlay::core::fill_rule::FillRule;
            use i_overlay::core::overlay_rule::OverlayRule;
            use i_overlay::float::overlay::FloatOverlay;
            let clip: Vec<Vec<[f64; 2]>> = cuts.iter().map(|r| r.iter().map(|p| [p.x, p.y]).collect()).collect();
            let shapes = FloatOverlay::with_subj(&clip).overlay(OverlayRule::Subject, FillRule::Negative);
            let mut a = 0.0f64;
            for shape in &shapes {
                for (i, path) in shape.iter().enumerate() {
                    let ring: Ring<f64> = path.iter().rev().map(|p| Point::new(p[0], p[1])).collect();
                    let _ = i;
                    a += ring_area(&ring);
                }
            }
            println!("union of cuts area {}", a);
        }
    }
}

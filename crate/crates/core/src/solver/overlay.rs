use crate::geom::{point_in_ring, ring_area, Point, Ring, Segment};
use crate::scalar::Scalar;
use std::collections::{HashMap, HashSet};

/// One bounded face of an arrangement: its boundary cycle (possibly
/// pinched where antennas are walked on both sides) and a point strictly
/// inside it.
#[derive(Clone, Debug)]
pub struct OverlayFace<F> {
    pub ring: Ring<F>,
    pub rep: Point<F>,
    pub area: F,
}

/// Planar subdivision induced by a set of segments: snapped vertices,
/// non-crossing edges between them, and the bounded faces.
#[derive(Clone, Debug)]
pub struct Overlay<F> {
    pub vertices: Vec<Point<F>>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<OverlayFace<F>>,
    pub input_segments: usize,
}

/// Build the arrangement of `segments` by pairwise intersection (O(m²),
/// fine at the instance sizes the solvers target), endpoint snapping to
/// a grid of pitch `snap`, and half-edge face tracing.
pub fn build_arrangement<F: Scalar>(segments: &[Segment<F>], snap: F) -> Overlay<F> {
    let quant = |p: &Point<F>| -> (i64, i64) {
        (
            (p.x / snap).round().to_f64_lossy() as i64,
            (p.y / snap).round().to_f64_lossy() as i64,
        )
    };

    let mut vertices: Vec<Point<F>> = Vec::new();
    let mut vmap: HashMap<(i64, i64), usize> = HashMap::new();
    let mut vertex_of = |p: Point<F>, vertices: &mut Vec<Point<F>>| -> usize {
        *vmap.entry(quant(&p)).or_insert_with(|| {
            vertices.push(p);
            vertices.len() - 1
        })
    };

    let mut edge_set: HashSet<(usize, usize)> = HashSet::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, s) in segments.iter().enumerate() {
        let mut ts: Vec<F> = vec![F::zero(), F::one()];
        for (j, o) in segments.iter().enumerate() {
            if i != j {
                ts.extend(crate::geom::seg_intersections(s, o, snap));
            }
        }
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let len = s.len_l2().fmax(F::lit(1e-300));
        let tt = snap / len;
        ts.dedup_by(|a, b| (*a - *b).fabs() <= tt);
        for w in ts.windows(2) {
            let a = vertex_of(s.eval(w[0]), &mut vertices);
            let b = vertex_of(s.eval(w[1]), &mut vertices);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if edge_set.insert(key) {
                edges.push(key);
            }
        }
    }

    // Neighbor lists sorted by direction angle, for rotational dart
    // stepping.
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for &(a, b) in &edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let angle = |u: usize, v: usize| -> F {
        (vertices[v].y - vertices[u].y).atan2(vertices[v].x - vertices[u].x)
    };
    for u in 0..vertices.len() {
        let mut list = std::mem::take(&mut nbrs[u]);
        list.sort_by(|&a, &b| angle(u, a).partial_cmp(&angle(u, b)).unwrap());
        list.dedup();
        nbrs[u] = list;
    }

    // Trace faces: after arriving along u -> v, leave along the neighbor
    // of v that is rotationally next after u in clockwise order. Bounded
    // faces come out counterclockwise (positive area).
    let mut visited: HashSet<(usize, usize)> = HashSet::new();
    let mut faces: Vec<OverlayFace<F>> = Vec::new();
    let all_darts: Vec<(usize, usize)> = edges
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    for &start in &all_darts {
        if visited.contains(&start) {
            continue;
        }
        let mut cycle: Vec<usize> = Vec::new();
        let mut dart = start;
        loop {
            visited.insert(dart);
            cycle.push(dart.0);
            let (u, v) = dart;
            let list = &nbrs[v];
            let pos = list.iter().position(|&w| w == u).expect("dart endpoint");
            let w = list[(pos + list.len() - 1) % list.len()];
            dart = (v, w);
            if dart == start {
                break;
            }
            if cycle.len() > 4 * edges.len() + 4 {
                break; // inconsistent structure; abandon this cycle
            }
        }
        let ring: Ring<F> = cycle.iter().map(|&i| vertices[i]).collect();
        if ring.len() < 3 {
            continue;
        }
        let area = ring_area(&ring);
        if area <= snap * snap {
            continue; // outer face or degenerate sliver
        }
        if let Some(rep) = interior_point(&ring) {
            faces.push(OverlayFace { ring, rep, area });
        }
    }

    Overlay { vertices, edges, faces, input_segments: segments.len() }
}

/// A point strictly inside a (possibly pinched) ring: the centroid when
/// that works, otherwise the midpoint of the widest span of a horizontal
/// scanline, retrying at several heights.
pub fn interior_point<F: Scalar>(ring: &Ring<F>) -> Option<Point<F>> {
    let (area, mx, my) = crate::geom::ring_moments(ring);
    if area != F::zero() {
        let c = Point::new(mx / area, my / area);
        if strictly_inside(&c, ring) {
            return Some(c);
        }
    }
    let ylo = ring.iter().map(|p| p.y).fold(F::infinity(), F::fmin);
    let yhi = ring.iter().map(|p| p.y).fold(F::neg_infinity(), F::fmax);
    for k in 1..16 {
        let frac = F::lit(k as f64 * 0.061803398875).fract();
        let y = ylo + (yhi - ylo) * (F::lit(0.2) + F::lit(0.6) * frac);
        let mut xs: Vec<F> = Vec::new();
        for i in 0..ring.len() {
            let a = &ring[i];
            let b = &ring[(i + 1) % ring.len()];
            if (a.y > y) != (b.y > y) {
                xs.push(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
            }
        }
        xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let mut best: Option<(F, Point<F>)> = None;
        for pair in xs.chunks(2) {
            if pair.len() < 2 {
                break;
            }
            let wid = pair[1] - pair[0];
            let c = Point::new((pair[0] + pair[1]) * F::lit(0.5), y);
            if strictly_inside(&c, ring) && best.map_or(true, |(bw, _)| wid > bw) {
                best = Some((wid, c));
            }
        }
        if let Some((_, c)) = best {
            return Some(c);
        }
    }
    None
}

fn strictly_inside<F: Scalar>(p: &Point<F>, ring: &Ring<F>) -> bool {
    for i in 0..ring.len() {
        let s = Segment::new(ring[i], ring[(i + 1) % ring.len()]);
        if s.dist_to_point(p) <= F::lit(1e-12) {
            return false;
        }
    }
    point_in_ring(p, ring, F::zero())
}

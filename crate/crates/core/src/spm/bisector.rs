use super::cells::SpmCell;
use super::engine::{SourceField, SpmEngine};
use super::SpmError;
use crate::geom::{collinear_overlap, Point, Segment};
use crate::scalar::Scalar;
use std::collections::HashMap;

/// Identity of an SPM cell root: the source itself or a domain vertex
/// (index into the flattened vertex list).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RootId {
    Source,
    Vertex(usize),
}

/// A maximal polyline along which two SPM cells with distinct roots
/// meet. `watershed` is true when the geodesic distance to the source
/// strictly decreases on both sides: shortest paths arrive from opposite
/// directions and no shortest path crosses the chain.
#[derive(Clone, Debug)]
pub struct BisectorChain<F> {
    pub roots: (RootId, RootId),
    pub polyline: Vec<Point<F>>,
    pub watershed: bool,
}

impl<F: Scalar> BisectorChain<F> {
    pub fn length_l2(&self) -> F {
        self.polyline
            .windows(2)
            .map(|w| Segment::new(w[0], w[1]).len_l2())
            .fold(F::zero(), |a, b| a + b)
    }
}

fn cell_segments<F: Scalar>(cell: &SpmCell<F>) -> Vec<Segment<F>> {
    let mut out = Vec::new();
    for ring in cell.signed_rings() {
        for i in 0..ring.len() {
            out.push(Segment::new(ring[i], ring[(i + 1) % ring.len()]));
        }
    }
    out
}

/// Find all bisector chains among the given cells and classify each as
/// watershed or crossable. Chains are recovered as collinear overlaps of
/// cell boundary segments, then stitched end to end.
pub fn extract_bisectors<F: Scalar>(
    engine: &SpmEngine<F>,
    field: &SourceField<F>,
    cells: &[SpmCell<F>],
) -> Result<Vec<BisectorChain<F>>, SpmError> {
    let dom = &engine.domain;
    // Cell boundaries come out of the snapping boolean kernel and two
    // sides of the same bisector can sit a few snap quanta (~1e-9
    // relative) apart; match them with an order of magnitude of slack.
    let eps = dom.eps() * F::lit(10.0);
    let min_len = F::lit(1e-7) * (dom.diameter() + F::one());

    let segs: Vec<Vec<Segment<F>>> = cells.iter().map(cell_segments).collect();
    let mut pieces: HashMap<(RootId, RootId), Vec<(Point<F>, Point<F>)>> = HashMap::new();
    for i in 0..cells.len() {
        for j in (i + 1)..cells.len() {
            if cells[i].root == cells[j].root {
                continue;
            }
            let key = if cells[i].root < cells[j].root {
                (cells[i].root, cells[j].root)
            } else {
                (cells[j].root, cells[i].root)
            };
            for si in &segs[i] {
                for sj in &segs[j] {
                    if let Some((a, b)) = collinear_overlap(si, sj, eps) {
                        if a.l1(&b) > min_len {
                            pieces.entry(key).or_default().push((a, b));
                        }
                    }
                }
            }
        }
    }

    let mut out = Vec::new();
    let mut keys: Vec<_> = pieces.keys().copied().collect();
    keys.sort();
    for key in keys {
        let list = &pieces[&key];
        for polyline in stitch(list, min_len) {
            let watershed = classify_watershed(engine, field, &polyline)?;
            out.push(BisectorChain { roots: key, polyline, watershed });
        }
    }
    Ok(out)
}

/// Stitch overlap pieces into maximal polylines by snapping endpoints.
fn stitch<F: Scalar>(pieces: &[(Point<F>, Point<F>)], snap: F) -> Vec<Vec<Point<F>>> {
    let quant = |p: &Point<F>| -> (i64, i64) {
        (
            (p.x / snap).round().to_f64_lossy() as i64,
            (p.y / snap).round().to_f64_lossy() as i64,
        )
    };
    let mut at: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (idx, (a, b)) in pieces.iter().enumerate() {
        at.entry(quant(a)).or_default().push(idx);
        at.entry(quant(b)).or_default().push(idx);
    }
    let mut used = vec![false; pieces.len()];
    let mut chains = Vec::new();
    for start in 0..pieces.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain = vec![pieces[start].0, pieces[start].1];
        // Grow forward from the tail, then backward from the head.
        for _pass in 0..2 {
            loop {
                let tail = *chain.last().unwrap();
                let mut found = None;
                for &idx in at.get(&quant(&tail)).map(|v| v.as_slice()).unwrap_or(&[]) {
                    if used[idx] {
                        continue;
                    }
                    let (a, b) = pieces[idx];
                    if a.l1(&tail) <= snap * F::lit(2.0) {
                        found = Some((idx, b));
                    } else if b.l1(&tail) <= snap * F::lit(2.0) {
                        found = Some((idx, a));
                    }
                    if found.is_some() {
                        break;
                    }
                }
                match found {
                    Some((idx, next)) => {
                        used[idx] = true;
                        chain.push(next);
                    }
                    None => break,
                }
            }
            chain.reverse();
        }
        chains.push(chain);
    }
    chains
}

/// Probe both sides of a chain: watershed when the perpendicular slope
/// of the distance field drops across it (paths arrive on both sides and
/// none cross). The one-sided test `d < d0` on each side is wrong for
/// diagonal chains, where the L1 distance can be flat perpendicular to
/// the chain on one side; the second difference d1 + d2 - 2 d0 is
/// strictly negative exactly at a ridge.
fn classify_watershed<F: Scalar>(
    engine: &SpmEngine<F>,
    field: &SourceField<F>,
    polyline: &[Point<F>],
) -> Result<bool, SpmError> {
    let dom = &engine.domain;
    let probe_dist = F::lit(1e-6) * (dom.diameter() + F::one());
    let thresh = probe_dist * F::lit(0.1);

    // Prefer long segments and their midpoints; junction endpoints are
    // poor probe anchors.
    let mut segs: Vec<Segment<F>> = polyline
        .windows(2)
        .map(|w| Segment::new(w[0], w[1]))
        .collect();
    segs.sort_by(|a, b| b.len_l2().partial_cmp(&a.len_l2()).unwrap());
    for seg in &segs {
        if seg.len_l2() <= probe_dist * F::lit(4.0) {
            continue;
        }
        let m = seg.midpoint();
        let dx = seg.b.x - seg.a.x;
        let dy = seg.b.y - seg.a.y;
        let len = seg.len_l2();
        let n = Point::new(-dy / len, dx / len);
        let p1 = Point::new(m.x + n.x * probe_dist, m.y + n.y * probe_dist);
        let p2 = Point::new(m.x - n.x * probe_dist, m.y - n.y * probe_dist);
        if !dom.contains(&p1) || !dom.contains(&p2) {
            continue;
        }
        let d0 = engine.dist_to_point(field, &m)?;
        let d1 = engine.dist_to_point(field, &p1)?;
        let d2 = engine.dist_to_point(field, &p2)?;
        return Ok(d1 + d2 < d0 + d0 - thresh);
    }
    // Too short to probe: cannot carry a ridge of meaningful length.
    Ok(false)
}

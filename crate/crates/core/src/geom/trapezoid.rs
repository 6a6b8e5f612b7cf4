use super::domain::PolygonalDomain;
use super::point::Axis;
use super::{GeomError, EPS_GEOM};
use crate::scalar::Scalar;

/// One trapezoid of a decomposition with walls perpendicular to the main
/// axis. Coordinates are expressed in the frame where the main axis is
/// horizontal: `lo`/`hi` are the wall positions along the main axis,
/// `bot_*`/`top_*` the cross-axis coordinates of the bottom and top edges
/// at those walls. For `Axis::Y` decompositions the frame is the
/// transposed domain, so `lo`/`hi` are y coordinates of the original.
#[derive(Clone, Copy, Debug)]
pub struct Trapezoid<F> {
    pub lo: F,
    pub hi: F,
    pub bot_lo: F,
    pub bot_hi: F,
    pub top_lo: F,
    pub top_hi: F,
}

impl<F: Scalar> Trapezoid<F> {
    pub fn width(&self) -> F {
        self.hi - self.lo
    }

    /// Cross-axis extent of the trapezoid at main-axis coordinate `t`,
    /// given as `(bottom, top)`.
    pub fn section(&self, t: F) -> (F, F) {
        let w = self.width();
        let u = if w > F::zero() { (t - self.lo) / w } else { F::zero() };
        (
            self.bot_lo + u * (self.bot_hi - self.bot_lo),
            self.top_lo + u * (self.top_hi - self.top_lo),
        )
    }

    pub fn height(&self, t: F) -> F {
        let (b, top) = self.section(t);
        top - b
    }

    pub fn area(&self) -> F {
        self.width() * (self.height(self.lo) + self.height(self.hi)) * F::lit(0.5)
    }

    /// Area of the part with main-axis coordinate below `t`. Quadratic
    /// in `t`.
    pub fn area_below(&self, t: F) -> F {
        let t = t.fmax(self.lo).fmin(self.hi);
        (t - self.lo) * (self.height(self.lo) + self.height(t)) * F::lit(0.5)
    }
}

/// A trapezoid decomposition of a domain. Walls are the maximal chords
/// perpendicular to `axis` through vertices; inside a trapezoid the two
/// non-wall edges are straight. `adjacency` records pairs of trapezoids
/// sharing a positive-length wall segment; for a simple polygon the
/// adjacency graph is a tree.
#[derive(Clone, Debug)]
pub struct Trapezoidization<F> {
    pub axis: Axis,
    pub traps: Vec<Trapezoid<F>>,
    pub adjacency: Vec<(usize, usize)>,
}

impl<F: Scalar> Trapezoidization<F> {
    pub fn total_area(&self) -> F {
        self.traps.iter().map(|t| t.area()).fold(F::zero(), |a, b| a + b)
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.traps.len()];
        for &(a, b) in &self.adjacency {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn is_tree(&self) -> bool {
        if self.traps.is_empty() {
            return false;
        }
        if self.adjacency.len() != self.traps.len() - 1 {
            return false;
        }
        // Connected with n-1 edges => tree.
        let adj = self.neighbors();
        let mut seen = vec![false; self.traps.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.traps.len()
    }
}

struct Proto<F> {
    slab: usize,
    trap: Trapezoid<F>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Decompose `domain` into trapezoids with walls perpendicular to `axis`.
///
/// Built as a slab decomposition over the sorted vertex coordinates,
/// followed by merging across every slab wall that carries no vertex:
/// such a wall is not a chord of the decomposition, both side edges
/// continue across it linearly, and the union is again a trapezoid.
pub fn trapezoidize<F: Scalar>(
    domain: &PolygonalDomain<F>,
    axis: Axis,
) -> Result<Trapezoidization<F>, GeomError> {
    let frame;
    let dom = match axis {
        Axis::X => domain,
        Axis::Y => {
            frame = domain.transpose();
            &frame
        }
    };
    let eps = F::lit(EPS_GEOM) * (dom.diameter() + F::one());

    let mut xs: Vec<F> = dom.vertices().map(|p| p.x).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).fabs() <= eps);

    let edges = dom.edges();
    let mut protos: Vec<Proto<F>> = Vec::new();
    for slab in 0..xs.len().saturating_sub(1) {
        let (x0, x1) = (xs[slab], xs[slab + 1]);
        if x1 - x0 <= eps {
            continue;
        }
        let xm = (x0 + x1) * F::lit(0.5);
        let mut cuts: Vec<(F, F, F)> = Vec::new(); // (y at xm, y at x0, y at x1)
        for e in &edges {
            let (xa, xb) = (e.a.x, e.b.x);
            if xa.fmin(xb) < xm && xm < xa.fmax(xb) {
                let y_at = |x: F| e.a.y + (x - xa) / (xb - xa) * (e.b.y - e.a.y);
                cuts.push((y_at(xm), y_at(x0), y_at(x1)));
            }
        }
        if cuts.len() % 2 != 0 {
            return Err(GeomError::Numerical(format!(
                "odd edge count {} in slab {}",
                cuts.len(),
                slab
            )));
        }
        cuts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for pair in cuts.chunks(2) {
            let (bot, top) = (&pair[0], &pair[1]);
            protos.push(Proto {
                slab,
                trap: Trapezoid {
                    lo: x0,
                    hi: x1,
                    bot_lo: bot.1,
                    bot_hi: bot.2,
                    top_lo: top.1,
                    top_hi: top.2,
                },
            });
        }
    }

    // Wall processing: for every pair of trapezoids meeting across a slab
    // boundary, either merge (no vertex on the shared wall segment) or
    // record adjacency.
    let mut uf = UnionFind::new(protos.len());
    let verts: Vec<_> = dom.vertices().copied().collect();
    let mut contacts: Vec<(usize, usize)> = Vec::new();
    for i in 0..protos.len() {
        for j in 0..protos.len() {
            if protos[j].slab != protos[i].slab + 1 {
                continue;
            }
            let (a, b) = (&protos[i].trap, &protos[j].trap);
            if (a.hi - b.lo).fabs() > eps {
                continue;
            }
            let lo = a.bot_hi.fmax(b.bot_lo);
            let hi = a.top_hi.fmin(b.top_lo);
            if hi - lo <= eps {
                continue;
            }
            let x = a.hi;
            let vertex_on_wall = verts.iter().any(|v| {
                (v.x - x).fabs() <= eps && v.y >= lo - eps && v.y <= hi + eps
            });
            if vertex_on_wall {
                contacts.push((i, j));
            } else {
                uf.union(i, j);
            }
        }
    }

    // Rebuild merged trapezoids, taking walls from the extremal slabs.
    let mut rep_to_idx: std::collections::HashMap<usize, usize> = Default::default();
    let mut traps: Vec<Trapezoid<F>> = Vec::new();
    let mut order: Vec<usize> = (0..protos.len()).collect();
    order.sort_by_key(|&i| protos[i].slab);
    for &i in &order {
        let r = uf.find(i);
        let t = protos[i].trap;
        match rep_to_idx.get(&r) {
            None => {
                rep_to_idx.insert(r, traps.len());
                traps.push(t);
            }
            Some(&k) => {
                let m = &mut traps[k];
                m.hi = t.hi;
                m.bot_hi = t.bot_hi;
                m.top_hi = t.top_hi;
            }
        }
    }
    let mut proto_final = vec![0usize; protos.len()];
    for i in 0..protos.len() {
        proto_final[i] = rep_to_idx[&uf.find(i)];
    }

    let mut adjacency: Vec<(usize, usize)> = contacts
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (proto_final[i], proto_final[j]);
            (a.min(b), a.max(b))
        })
        .filter(|(a, b)| a != b)
        .collect();
    adjacency.sort();
    adjacency.dedup();

    Ok(Trapezoidization { axis, traps, adjacency })
}

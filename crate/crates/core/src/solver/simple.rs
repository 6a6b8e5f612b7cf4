use super::types::{Candidate, Provenance, Solution};
use super::SolverError;
use crate::geom::{trapezoidize, Axis, Point, PolygonalDomain, Trapezoidization};
use crate::objective::{evaluate_f, quad_roots};
use crate::scalar::Scalar;
use crate::Metric;

/// Index of the median trapezoid: removing it leaves components of
/// weight at most half the total. Found by rooting the tree anywhere and
/// descending toward any neighbor whose subtree exceeds half.
fn median_trap<F: Scalar>(tz: &Trapezoidization<F>) -> Result<usize, SolverError> {
    if !tz.is_tree() {
        return Err(SolverError::Geom(crate::geom::GeomError::NotATree));
    }
    let n = tz.traps.len();
    let adj = tz.neighbors();
    let w: Vec<F> = tz.traps.iter().map(|t| t.area()).collect();
    let total = w.iter().fold(F::zero(), |a, &b| a + b);
    let half = total * F::lit(0.5);

    // Subtree weights for the tree rooted at 0, children first.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    let mut sub = w.clone();
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            let s = sub[v];
            sub[parent[v]] += s;
        }
    }
    // Hanging weight of neighbor u as seen from v.
    let hang = |v: usize, u: usize| -> F {
        if parent[u] == v {
            sub[u]
        } else {
            total - sub[v]
        }
    };
    let mut v = 0usize;
    loop {
        let heavy = adj[v].iter().copied().find(|&u| hang(v, u) > half);
        match heavy {
            None => return Ok(v),
            Some(u) => v = u,
        }
    }
}

/// Median coordinate along the decomposition's main axis: the wall
/// coordinate splitting the total area in half, solved inside the median
/// trapezoid where the cumulative area is quadratic.
fn median_coordinate<F: Scalar>(tz: &Trapezoidization<F>) -> Result<F, SolverError> {
    let m = median_trap(tz)?;
    let trap = &tz.traps[m];
    let total = tz.total_area();
    let half = total * F::lit(0.5);

    // Weight hanging on the low side of the median trapezoid: the
    // components attached through walls at `trap.lo`.
    let adj = tz.neighbors();
    let mut low_weight = F::zero();
    let mut seen = vec![false; tz.traps.len()];
    seen[m] = true;
    for &u in &adj[m] {
        // A neighbor touches through the wall at either trap.lo or trap.hi.
        let through_low = (tz.traps[u].hi - trap.lo).fabs() <= (tz.traps[u].lo - trap.hi).fabs();
        if !through_low {
            continue;
        }
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(v) = stack.pop() {
            low_weight += tz.traps[v].area();
            for &x in &adj[v] {
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
    }

    let target = half - low_weight;
    if target <= F::zero() {
        return Ok(trap.lo);
    }
    if target >= trap.area() {
        return Ok(trap.hi);
    }
    // area_below(lo + u) = h0·u + slope/2·u² with h linear across.
    let w = trap.width();
    let h0 = trap.height(trap.lo);
    let h1 = trap.height(trap.hi);
    let slope = (h1 - h0) / w;
    let roots = quad_roots(slope * F::lit(0.5), h0, -target, F::zero(), w);
    let u = roots.first().copied().unwrap_or(w * F::lit(0.5));
    Ok(trap.lo + u)
}

/// Geodesic L1 optimum position for a simple polygon: the intersection
/// of the vertical and horizontal median chords, which is always inside
/// the polygon and is the unique global minimizer.
pub fn median_point<F: Scalar>(domain: &PolygonalDomain<F>) -> Result<Point<F>, SolverError> {
    if !domain.holes().is_empty() {
        return Err(SolverError::HasHoles);
    }
    let tx = trapezoidize(domain, Axis::X)?;
    let ty = trapezoidize(domain, Axis::Y)?;
    Ok(Point::new(median_coordinate(&tx)?, median_coordinate(&ty)?))
}

/// Median-chord solver for simple polygons, with the exact objective
/// value at the optimum.
pub fn solve_simple<F: Scalar>(domain: &PolygonalDomain<F>) -> Result<Solution<F>, SolverError> {
    let z = median_point(domain)?;
    let value = evaluate_f(domain, &z, Metric::Geodesic, None)?;
    let cand = Candidate { point: z, value, provenance: Provenance::MedianChord };
    Solution::from_candidates(vec![cand], 1).ok_or(SolverError::NoCandidates)
}

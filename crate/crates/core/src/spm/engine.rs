use super::visibility::{visibility_polygon, visible};
use super::SpmError;
use crate::geom::{Point, PolygonalDomain, Ring};
use crate::scalar::Scalar;

/// Per-domain cache for geodesic queries: the vertex visibility graph,
/// all-pairs vertex geodesic distances with first hops, and the
/// visibility polygon of every vertex. Building one costs O(n³); every
/// SPM over the same domain reuses it.
pub struct SpmEngine<F: Scalar> {
    pub domain: PolygonalDomain<F>,
    pub verts: Vec<Point<F>>,
    vis: Vec<Vec<bool>>,
    dist: Vec<Vec<F>>,
    /// `next[u][v]` is the vertex after `u` on a shortest u→v path
    /// (`v` itself for the last hop).
    next: Vec<Vec<usize>>,
    vis_polys: Vec<Ring<F>>,
    vis_multis: Vec<geo::MultiPolygon<F>>,
}

/// Geodesic distances from one source point to every vertex, plus the
/// first path vertex, enough to reconstruct any shortest path.
pub struct SourceField<F> {
    pub source: Point<F>,
    /// Distance from the source to each vertex.
    pub dist: Vec<F>,
    /// First vertex on a shortest path source→v (may be `v`).
    pub first: Vec<usize>,
    /// Which vertices see the source directly.
    pub sees: Vec<bool>,
}

impl<F: Scalar> SpmEngine<F> {
    pub fn new(domain: &PolygonalDomain<F>) -> Result<Self, SpmError> {
        let verts: Vec<Point<F>> = domain.vertices().copied().collect();
        let n = verts.len();
        let mut vis = vec![vec![false; n]; n];
        for i in 0..n {
            vis[i][i] = true;
            for j in (i + 1)..n {
                let v = visible(domain, &verts[i], &verts[j]);
                vis[i][j] = v;
                vis[j][i] = v;
            }
        }
        // Floyd-Warshall over the visibility graph with L1 edge weights.
        let inf = F::infinity();
        let mut dist = vec![vec![inf; n]; n];
        let mut next = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            dist[i][i] = F::zero();
            next[i][i] = i;
            for j in 0..n {
                if i != j && vis[i][j] {
                    dist[i][j] = verts[i].l1(&verts[j]);
                    next[i][j] = j;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if dist[i][k] == inf {
                    continue;
                }
                for j in 0..n {
                    let via = dist[i][k] + dist[k][j];
                    if via < dist[i][j] {
                        dist[i][j] = via;
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        let mut vis_polys = Vec::with_capacity(n);
        let mut vis_multis = Vec::with_capacity(n);
        for v in &verts {
            let ring = visibility_polygon(domain, v)?;
            vis_multis.push(super::cells::pinched_multi(&ring, v, domain.eps()));
            vis_polys.push(ring);
        }
        Ok(SpmEngine { domain: domain.clone(), verts, vis, dist, next, vis_polys, vis_multis })
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices_visible(&self, i: usize, j: usize) -> bool {
        self.vis[i][j]
    }

    pub fn vertex_dist(&self, i: usize, j: usize) -> F {
        self.dist[i][j]
    }

    pub fn vis_poly(&self, v: usize) -> &Ring<F> {
        &self.vis_polys[v]
    }

    pub(crate) fn vis_multi(&self, v: usize) -> &geo::MultiPolygon<F> {
        &self.vis_multis[v]
    }

    /// Shortest-path distances from an arbitrary source point to all
    /// vertices.
    pub fn source_field(&self, z: &Point<F>) -> Result<SourceField<F>, SpmError> {
        if !self.domain.contains(z) {
            return Err(SpmError::PointOutsideDomain {
                x: z.x.to_f64_lossy(),
                y: z.y.to_f64_lossy(),
            });
        }
        let n = self.verts.len();
        let sees: Vec<bool> = (0..n).map(|i| visible(&self.domain, z, &self.verts[i])).collect();
        let mut dist = vec![F::infinity(); n];
        let mut first = vec![usize::MAX; n];
        for v in 0..n {
            for u in 0..n {
                if !sees[u] {
                    continue;
                }
                let d = z.l1(&self.verts[u]) + self.dist[u][v];
                if d < dist[v] {
                    dist[v] = d;
                    first[v] = u;
                }
            }
        }
        Ok(SourceField { source: *z, dist, first, sees })
    }

    /// Vertex sequence of a shortest path from the field's source to
    /// vertex `v` (ending with `v`).
    pub fn path_from_source(&self, field: &SourceField<F>, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = field.first[v];
        if cur == usize::MAX {
            return out;
        }
        out.push(cur);
        while cur != v {
            cur = self.next[cur][v];
            out.push(cur);
            if out.len() > self.verts.len() + 1 {
                break; // cycle guard; cannot happen on a consistent table
            }
        }
        out
    }

    /// Geodesic distance from the field's source to an arbitrary point.
    pub fn dist_to_point(&self, field: &SourceField<F>, p: &Point<F>) -> Result<F, SpmError> {
        if !self.domain.contains(p) {
            return Err(SpmError::PointOutsideDomain {
                x: p.x.to_f64_lossy(),
                y: p.y.to_f64_lossy(),
            });
        }
        let mut best = if visible(&self.domain, &field.source, p) {
            field.source.l1(p)
        } else {
            F::infinity()
        };
        for (v, pt) in self.verts.iter().enumerate() {
            if field.dist[v] + pt.l1(p) < best && visible(&self.domain, pt, p) {
                best = field.dist[v] + pt.l1(p);
            }
        }
        if best.is_infinite() {
            return Err(SpmError::DegeneratePosition {
                reason: "no geodesic path found".into(),
            });
        }
        Ok(best)
    }
}

/// Geodesic L1 distance between two points of a domain. Convenience
/// wrapper building a throwaway engine; batch callers should hold an
/// [`SpmEngine`].
pub fn geodesic_distance<F: Scalar>(
    domain: &PolygonalDomain<F>,
    a: &Point<F>,
    b: &Point<F>,
) -> Result<F, SpmError> {
    let engine = SpmEngine::new(domain)?;
    let field = engine.source_field(a)?;
    engine.dist_to_point(&field, b)
}

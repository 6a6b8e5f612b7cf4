//! Instance file format, a small gallery of fixed domains, and seeded
//! random generators used by the test and acceptance suites.
//!
//! The interchange format is JSON:
//! `{"outer": [[x,y],...], "holes": [[[x,y],...],...]}`.

use crate::geom::{GeomError, PolygonalDomain};
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Instance {
    pub outer: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<Vec<[f64; 2]>>,
}

impl Instance {
    pub fn new(outer: Vec<[f64; 2]>, holes: Vec<Vec<[f64; 2]>>) -> Self {
        Instance { outer, holes }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization")
    }

    pub fn domain<F: Scalar>(&self) -> Result<PolygonalDomain<F>, GeomError> {
        let conv = |ring: &[[f64; 2]]| -> Vec<(F, F)> {
            ring.iter().map(|&[x, y]| (F::lit(x), F::lit(y))).collect()
        };
        let mut rings = vec![conv(&self.outer)];
        rings.extend(self.holes.iter().map(|h| conv(h)));
        PolygonalDomain::validate(&rings)
    }

    /// Jitter every vertex by up to `scale` in each coordinate. Used by
    /// the CLI `--perturb` escape hatch for degenerate inputs.
    pub fn perturbed(&self, scale: f64, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut jitter = |p: &[f64; 2]| {
            [
                p[0] + rng.gen_range(-scale..scale),
                p[1] + rng.gen_range(-scale..scale),
            ]
        };
        Instance {
            outer: self.outer.iter().map(&mut jitter).collect(),
            holes: self
                .holes
                .iter()
                .map(|h| h.iter().map(&mut jitter).collect())
                .collect(),
        }
    }
}

pub fn unit_square() -> Instance {
    Instance::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], vec![])
}

pub fn l_shape() -> Instance {
    Instance::new(
        vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]],
        vec![],
    )
}

/// The square `[0,4]²` with the square hole `[1,3]²` removed.
pub fn holed_square() -> Instance {
    Instance::new(
        vec![[0.0, 0.0], [4.0, 0.0], [4.0, 4.0], [0.0, 4.0]],
        vec![vec![[1.0, 1.0], [3.0, 1.0], [3.0, 3.0], [1.0, 3.0]]],
    )
}

/// Random simple polygon with `n` vertices: a star with jittered angles
/// and radii around the origin, which is simple by construction.
/// Validation can still reject near-degenerate draws, so we retry with
/// fresh jitter.
pub fn random_simple(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let inst = star(&mut rng, n, [0.0, 0.0], 2.0);
        if inst.domain::<f64>().is_ok() {
            return inst;
        }
    }
}

/// Random polygon with `n_holes` small triangular holes. The outer ring
/// is a star; holes are dropped at random interior positions and the
/// whole candidate is re-validated until it passes.
pub fn random_holed(n: usize, n_holes: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut inst = star(&mut rng, n, [0.0, 0.0], 2.0);
        let dom: PolygonalDomain<f64> = match inst.domain() {
            Ok(d) => d,
            Err(_) => continue,
        };
        let mut placed = 0;
        for _ in 0..40 {
            if placed == n_holes {
                break;
            }
            let cx = rng.gen_range(-1.2..1.2);
            let cy = rng.gen_range(-1.2..1.2);
            let r = rng.gen_range(0.15..0.3);
            let rot = rng.gen_range(0.0..std::f64::consts::TAU);
            let tri: Vec<[f64; 2]> = (0..3)
                .map(|k| {
                    let a = rot + k as f64 * std::f64::consts::TAU / 3.0;
                    [cx + r * a.cos(), cy + r * a.sin()]
                })
                .collect();
            // Quick reject before full validation: hole center inside and
            // clear of the boundary and other holes.
            let p = crate::geom::Point::new(cx, cy);
            let inside = crate::geom::point_in_ring(&p, dom.outer(), 0.0)
                && dom.edges().iter().all(|e| e.dist_to_point(&p) > r + 0.15);
            if inside {
                let mut candidate = inst.clone();
                candidate.holes.push(tri);
                if candidate.domain::<f64>().is_ok() {
                    inst = candidate;
                    placed += 1;
                }
            }
        }
        if placed == n_holes {
            return inst;
        }
    }
}

fn star(rng: &mut ChaCha8Rng, n: usize, center: [f64; 2], scale: f64) -> Instance {
    let tau = std::f64::consts::TAU;
    let outer: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let a = tau * (i as f64 + rng.gen_range(-0.3..0.3)) / n as f64;
            let r = scale * rng.gen_range(0.45..1.0);
            [center[0] + r * a.cos(), center[1] + r * a.sin()]
        })
        .collect();
    Instance::new(outer, vec![])
}

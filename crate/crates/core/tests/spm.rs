use l1median::geom::Point;
use l1median::instances::{holed_square, l_shape, random_holed, random_simple};
use l1median::spm::{build_spm, RootId, SpmEngine};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cells must partition the domain regardless of where the source sits.
#[test]
fn cells_partition_the_domain() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..6 {
        let inst = if seed % 2 == 0 {
            random_simple(10, seed)
        } else {
            random_holed(8, 1, seed)
        };
        let dom = inst.domain::<f64>().unwrap();
        let engine = SpmEngine::new(&dom).unwrap();
        let (lo, hi) = dom.bbox();
        let z = loop {
            let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if dom.contains(&p) {
                break p;
            }
        };
        let spm = build_spm(&engine, &z, false).unwrap();
        let total: f64 = spm.cells.iter().map(|c| c.area()).sum();
        assert!(
            (total - dom.area()).abs() < 1e-6 * (dom.area() + 1.0),
            "seed {seed}: cell area {total} vs domain {}",
            dom.area()
        );
    }
}

#[test]
fn source_in_convex_position_owns_everything() {
    let dom = l_shape().domain::<f64>().unwrap();
    let engine = SpmEngine::new(&dom).unwrap();
    // (0.75, 0.75) sees the whole L, so no vertex cell survives.
    let spm = build_spm(&engine, &Point::new(0.75, 0.75), false).unwrap();
    assert!(spm.cells.iter().all(|c| c.root == RootId::Source));
    let total: f64 = spm.cells.iter().map(|c| c.area()).sum();
    assert!((total - 3.0).abs() < 1e-9);
}

#[test]
fn shadow_region_routes_through_the_reflex_vertex() {
    let dom = l_shape().domain::<f64>().unwrap();
    let engine = SpmEngine::new(&dom).unwrap();
    let spm = build_spm(&engine, &Point::new(1.5, 0.5), true).unwrap();
    // Vertex 3 is the reflex corner (1,1); its cell is the shadow
    // quadrant [0,1]x[1,2].
    let shadow: Vec<_> = spm
        .cells
        .iter()
        .filter(|c| matches!(c.root, RootId::Vertex(_)))
        .collect();
    assert_eq!(shadow.len(), 1);
    let c = shadow[0];
    assert!((c.root_point.x - 1.0).abs() < 1e-12);
    assert!((c.root_point.y - 1.0).abs() < 1e-12);
    assert!((c.root_dist - 1.0).abs() < 1e-9);
    assert!((c.area() - 1.0).abs() < 1e-9);
    // The window between the direct and the routed region is a bisector
    // but not a watershed: distance grows across it in one direction.
    assert!(!spm.bisectors.is_empty());
    assert!(spm.bisectors.iter().all(|b| !b.watershed));
}

#[test]
fn opposite_hole_side_gets_a_watershed() {
    let dom = holed_square().domain::<f64>().unwrap();
    let engine = SpmEngine::new(&dom).unwrap();
    // Source left of the hole; distances wrap around it both ways and
    // collide on the far side.
    let spm = build_spm(&engine, &Point::new(0.5, 2.0), true).unwrap();
    let total: f64 = spm.cells.iter().map(|c| c.area()).sum();
    assert!((total - 12.0).abs() < 1e-6, "{total}");
    assert!(
        spm.bisectors.iter().any(|b| b.watershed),
        "expected a watershed behind the hole: {:?}",
        spm.bisectors
            .iter()
            .map(|b| (b.roots, b.watershed))
            .collect::<Vec<_>>()
    );
}

#[test]
fn distance_integrals_sum_to_the_objective() {
    let dom = holed_square().domain::<f64>().unwrap();
    let engine = SpmEngine::new(&dom).unwrap();
    let z = Point::new(0.5, 2.0);
    let spm = build_spm(&engine, &z, false).unwrap();
    let total: f64 = spm.cells.iter().map(|c| c.distance_integral()).sum();
    let f = l1median::objective::evaluate_f(
        &dom,
        &z,
        l1median::Metric::Geodesic,
        Some(&engine),
    )
    .unwrap();
    assert!((total / dom.area() - f).abs() < 1e-12);
}

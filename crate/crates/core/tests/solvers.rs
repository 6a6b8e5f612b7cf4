use l1median::geom::{Location, Point};
use l1median::instances::{holed_square, l_shape, random_holed, random_simple, unit_square};
use l1median::objective::evaluate_f;
use l1median::solver::{
    l1_origin, median_point, solve_holes, solve_simple, solve_straight, SolverError,
};
use l1median::spm::geodesic_distance;
use l1median::Metric;

#[test]
fn l1_origin_of_l_shape_is_feasible() {
    let dom = l_shape().domain::<f64>().unwrap();
    let origin = l1_origin(&dom);
    assert!(origin.feasible);
    assert!((origin.point.x - 0.75).abs() < 1e-12);
    assert!((origin.point.y - 0.75).abs() < 1e-12);
}

#[test]
fn l1_origin_of_holed_square_is_infeasible() {
    let dom = holed_square().domain::<f64>().unwrap();
    let origin = l1_origin(&dom);
    assert!(!origin.feasible);
    assert!((origin.point.x - 2.0).abs() < 1e-12);
    assert!((origin.point.y - 2.0).abs() < 1e-12);
}

#[test]
fn straight_solver_on_l_shape() {
    let dom = l_shape().domain::<f64>().unwrap();
    let sol = solve_straight(&dom, true).unwrap();
    assert!((sol.optimum.point.x - 0.75).abs() < 1e-12);
    assert!((sol.optimum.point.y - 0.75).abs() < 1e-12);
    assert!((sol.optimum.value - 11.0 / 12.0).abs() < 1e-12);
}

#[test]
fn straight_solver_on_holed_square_ties() {
    let dom = holed_square().domain::<f64>().unwrap();
    let sol = solve_straight(&dom, true).unwrap();
    assert!((sol.optimum.value - 2.5).abs() < 1e-9);
    // The four hole-edge midpoints all achieve the optimum.
    assert!(sol.ties.len() >= 4, "ties: {:?}", sol.ties);
    for expect in [(1.0, 2.0), (2.0, 1.0), (2.0, 3.0), (3.0, 2.0)] {
        assert!(
            sol.ties
                .iter()
                .any(|t| (t.point.x - expect.0).abs() < 1e-9
                    && (t.point.y - expect.1).abs() < 1e-9),
            "missing tie at {expect:?}"
        );
    }
}

#[test]
fn pruning_does_not_change_the_straight_optimum() {
    for seed in 0..12 {
        let inst = random_holed(8, 1, seed);
        let dom = inst.domain::<f64>().unwrap();
        let fast = solve_straight(&dom, true).unwrap();
        let slow = solve_straight(&dom, false).unwrap();
        assert!(
            (fast.optimum.value - slow.optimum.value).abs() < 1e-9,
            "seed {seed}: {} vs {}",
            fast.optimum.value,
            slow.optimum.value
        );
    }
}

#[test]
fn median_point_of_l_shape() {
    let dom = l_shape().domain::<f64>().unwrap();
    let m = median_point(&dom).unwrap();
    assert!((m.x - 0.75).abs() < 1e-12, "{m:?}");
    assert!((m.y - 0.75).abs() < 1e-12, "{m:?}");
}

#[test]
fn simple_solver_rejects_holes() {
    let dom = holed_square().domain::<f64>().unwrap();
    assert!(matches!(solve_simple(&dom), Err(SolverError::HasHoles)));
}

#[test]
fn median_point_stays_inside_random_polygons() {
    for seed in 0..30 {
        let inst = random_simple(14, seed);
        let dom = inst.domain::<f64>().unwrap();
        let m = median_point(&dom).unwrap();
        assert_ne!(
            dom.locate(&m),
            Location::Exterior,
            "seed {seed}: median {m:?} left the domain"
        );
    }
}

#[test]
fn geodesic_distance_around_a_hole() {
    let dom = holed_square().domain::<f64>().unwrap();
    let d = geodesic_distance(&dom, &Point::new(0.5, 2.0), &Point::new(3.5, 2.0)).unwrap();
    // Straight-line distance is 3 but the path must round the hole.
    assert!((d - 5.0).abs() < 1e-9, "{d}");
    let d = geodesic_distance(&dom, &Point::new(0.0, 2.0), &Point::new(4.0, 2.0)).unwrap();
    assert!((d - 6.0).abs() < 1e-9, "{d}");
    let d = geodesic_distance(&dom, &Point::new(0.5, 0.5), &Point::new(0.5, 3.5)).unwrap();
    assert!((d - 3.0).abs() < 1e-9, "{d}");
}

#[test]
fn holed_solver_on_the_square_ring() {
    let dom = holed_square().domain::<f64>().unwrap();
    let sol = solve_holes(&dom).unwrap();
    // Optima sit on the hole boundary; by symmetry the four corners of the
    // hole are exchangeable, so check the value and feasibility only.
    assert!((sol.optimum.value - 8.0 / 3.0).abs() < 1e-7, "{}", sol.optimum.value);
    assert_ne!(dom.locate(&sol.optimum.point), Location::Exterior);
}

#[test]
fn solvers_agree_where_both_apply() {
    // On a star-shaped polygon whose kernel contains the straight optimum,
    // geodesic and straight objectives coincide near it.
    let dom = unit_square().domain::<f64>().unwrap();
    let s = solve_straight(&dom, true).unwrap();
    let g = solve_simple(&dom).unwrap();
    assert!((s.optimum.point.x - g.optimum.point.x).abs() < 1e-9);
    assert!((s.optimum.point.y - g.optimum.point.y).abs() < 1e-9);
    assert!((s.optimum.value - g.optimum.value).abs() < 1e-9);
}

#[test]
fn geodesic_value_at_simple_median_is_consistent() {
    for seed in 0..8 {
        let inst = random_simple(10, seed);
        let dom = inst.domain::<f64>().unwrap();
        let sol = solve_simple(&dom).unwrap();
        let again = evaluate_f(&dom, &sol.optimum.point, Metric::Geodesic, None).unwrap();
        assert!(
            (sol.optimum.value - again).abs() < 1e-9,
            "seed {seed}: {} vs {again}",
            sol.optimum.value
        );
    }
}

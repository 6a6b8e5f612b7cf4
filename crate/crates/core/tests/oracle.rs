use l1median::geom::Point;
use l1median::instances::{holed_square, l_shape, random_simple, unit_square};
use l1median::objective::evaluate_f;
use l1median::oracle::{GridSpec, OracleContext};
use l1median::solver::{solve_simple, solve_straight};
use l1median::Metric;

#[test]
fn grid_must_be_reasonable() {
    assert!(GridSpec::new(4).is_err());
    assert!(GridSpec::new(64).is_ok());
}

#[test]
fn integration_converges_to_the_exact_value() {
    let dom = l_shape().domain::<f64>().unwrap();
    let z = Point::new(0.75, 0.75);
    let exact = evaluate_f(&dom, &z, Metric::Straight, None).unwrap();
    let mut last_err = f64::INFINITY;
    for n in [32, 64, 128] {
        let ctx = OracleContext::new(&dom, GridSpec::new(n).unwrap()).unwrap();
        let (v, bound) = ctx.average_from(&z, Metric::Straight).unwrap();
        let err = (v - exact).abs();
        assert!(err <= bound, "n={n}: error {err} above reported bound {bound}");
        assert!(err <= last_err * 1.2, "n={n}: error not shrinking ({err})");
        last_err = err;
    }
    assert!(last_err < 1e-3, "final error {last_err}");
}

#[test]
fn geodesic_integration_matches_straight_on_convex() {
    let dom = unit_square().domain::<f64>().unwrap();
    let ctx = OracleContext::new(&dom, GridSpec::new(64).unwrap()).unwrap();
    let z = Point::new(0.3, 0.6);
    let (vs, _) = ctx.average_from(&z, Metric::Straight).unwrap();
    let (vg, _) = ctx.average_from(&z, Metric::Geodesic).unwrap();
    assert!((vs - vg).abs() < 1e-9, "{vs} vs {vg}");
}

#[test]
fn search_brackets_the_straight_solver() {
    for seed in 0..6 {
        let inst = random_simple(10, seed);
        let dom = inst.domain::<f64>().unwrap();
        let sol = solve_straight(&dom, true).unwrap();
        let ctx = OracleContext::new(&dom, GridSpec::new(96).unwrap()).unwrap();
        let res = ctx.search(Metric::Straight).unwrap();
        assert!(
            res.brackets(sol.optimum.value),
            "seed {seed}: solver {} outside [{}, {}]",
            sol.optimum.value,
            res.lower(),
            res.upper()
        );
        // The solver may never beat the oracle's lower bound.
        assert!(sol.optimum.value >= res.lower() - 1e-12);
    }
}

#[test]
fn search_brackets_the_geodesic_solver() {
    for seed in 0..4 {
        let inst = random_simple(10, seed);
        let dom = inst.domain::<f64>().unwrap();
        let sol = solve_simple(&dom).unwrap();
        let ctx = OracleContext::new(&dom, GridSpec::new(64).unwrap()).unwrap();
        let res = ctx.search(Metric::Geodesic).unwrap();
        assert!(
            res.brackets(sol.optimum.value),
            "seed {seed}: solver {} outside [{}, {}]",
            sol.optimum.value,
            res.lower(),
            res.upper()
        );
    }
}

#[test]
fn geodesic_integration_sees_the_detour() {
    let dom = holed_square().domain::<f64>().unwrap();
    let ctx = OracleContext::new(&dom, GridSpec::new(64).unwrap()).unwrap();
    let z = Point::new(0.5, 2.0);
    let (vs, _) = ctx.average_from(&z, Metric::Straight).unwrap();
    let (vg, bound) = ctx.average_from(&z, Metric::Geodesic).unwrap();
    assert!(vg > vs + 0.1, "geodesic {vg} should exceed straight {vs}");
    let exact = evaluate_f(&dom, &z, Metric::Geodesic, None).unwrap();
    assert!((vg - exact).abs() <= bound, "{vg} vs {exact} (bound {bound})");
}

#[test]
fn rejects_points_outside() {
    let dom = unit_square().domain::<f64>().unwrap();
    let ctx = OracleContext::new(&dom, GridSpec::new(32).unwrap()).unwrap();
    assert!(ctx.average_from(&Point::new(2.0, 2.0), Metric::Straight).is_err());
}

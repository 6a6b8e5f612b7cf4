use l1median::geom::Point;
use l1median::instances::{l_shape, random_simple, unit_square};
use l1median::objective::{evaluate_f, fit_cell_cubic, gradient_f, triangle_average};
use l1median::Metric;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn triangle_average_known_cases() {
    // Base (0,0)-(2,0), apex (2,2): average distance (2+2+2)/3.
    let v: f64 = triangle_average(
        &Point::new(0.0, 0.0),
        &Point::new(2.0, 0.0),
        &Point::new(2.0, 2.0),
    )
    .unwrap();
    assert!((v - 2.0).abs() < 1e-14);

    // Unit right triangle: centroid (2/3, 1/3) sits in the first quadrant
    // of the apex a, so the average is the centroid coordinate sum.
    let v: f64 = triangle_average(
        &Point::new(0.0, 0.0),
        &Point::new(1.0, 0.0),
        &Point::new(1.0, 1.0),
    )
    .unwrap();
    assert!((v - 1.0).abs() < 1e-14);

    // Wider triangle: (1+2+1)/3.
    let v: f64 = triangle_average(
        &Point::new(0.0, 0.0),
        &Point::new(1.0, 0.0),
        &Point::new(2.0, 1.0),
    )
    .unwrap();
    assert!((v - 4.0 / 3.0).abs() < 1e-14);
}

#[test]
fn triangle_average_rejects_slanted_base() {
    assert!(triangle_average(
        &Point::new(0.0, 0.0),
        &Point::new(1.0, 0.5),
        &Point::new(1.0, 1.0),
    )
    .is_err());
}

#[test]
fn unit_square_center_value() {
    let dom = unit_square().domain::<f64>().unwrap();
    let z = Point::new(0.5, 0.5);
    let fs = evaluate_f(&dom, &z, Metric::Straight, None).unwrap();
    assert!((fs - 0.5).abs() < 1e-12, "straight {fs}");
    let fg = evaluate_f(&dom, &z, Metric::Geodesic, None).unwrap();
    assert!((fg - 0.5).abs() < 1e-12, "geodesic {fg}");
}

#[test]
fn metrics_agree_on_convex_domains() {
    let dom = unit_square().domain::<f64>().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let z = Point::new(rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
        let fs = evaluate_f(&dom, &z, Metric::Straight, None).unwrap();
        let fg = evaluate_f(&dom, &z, Metric::Geodesic, None).unwrap();
        assert!((fs - fg).abs() < 1e-10, "at {z:?}: {fs} vs {fg}");
    }
}

#[test]
fn gradient_matches_finite_differences_straight() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..10 {
        let inst = random_simple(10, seed);
        let dom = inst.domain::<f64>().unwrap();
        let (lo, hi) = dom.bbox();
        let z = loop {
            let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if dom.contains(&p) {
                break p;
            }
        };
        let (gx, gy) = gradient_f(&dom, &z, Metric::Straight, None).unwrap();
        let h = 1e-6 * dom.diameter();
        let fd = |dx: f64, dy: f64| {
            evaluate_f(&dom, &Point::new(z.x + dx, z.y + dy), Metric::Straight, None).unwrap()
        };
        let fdx = (fd(h, 0.0) - fd(-h, 0.0)) / (2.0 * h);
        let fdy = (fd(0.0, h) - fd(0.0, -h)) / (2.0 * h);
        assert!((gx - fdx).abs() < 1e-4, "seed {seed}: gx {gx} vs {fdx}");
        assert!((gy - fdy).abs() < 1e-4, "seed {seed}: gy {gy} vs {fdy}");
    }
}

#[test]
fn gradient_zero_at_square_center() {
    let dom = unit_square().domain::<f64>().unwrap();
    let (gx, gy) = gradient_f(&dom, &Point::new(0.5, 0.5), Metric::Straight, None).unwrap();
    assert!(gx.abs() < 1e-14 && gy.abs() < 1e-14);
}

#[test]
fn cubic_fit_recovers_straight_objective_on_square() {
    // On the unit square f(x,y) = (x² - x + 1/2) + (y² - y + 1/2) for
    // interior points, so the fitted pair must be exactly quadratic.
    let dom = unit_square().domain::<f64>().unwrap();
    let f = |p: Point<f64>| evaluate_f(&dom, &p, Metric::Straight, None);
    let cubic = fit_cell_cubic(f, Point::new(0.5, 0.5), 0.2).unwrap();
    let eval = cubic.eval(0.3, 0.7);
    let expect = evaluate_f(&dom, &Point::new(0.3, 0.7), Metric::Straight, None).unwrap();
    assert!((eval - expect).abs() < 1e-9, "{eval} vs {expect}");
    assert!(cubic.a[3].abs() < 1e-7, "cubic x term {:?}", cubic.a);
    assert!(cubic.b[3].abs() < 1e-7, "cubic y term {:?}", cubic.b);
    assert!((cubic.a[2] - 1.0).abs() < 1e-7, "x² coefficient {:?}", cubic.a);
    assert!((cubic.b[2] - 1.0).abs() < 1e-7, "y² coefficient {:?}", cubic.b);
}

#[test]
fn cubic_fit_stationary_point_is_the_median() {
    let dom = l_shape().domain::<f64>().unwrap();
    let f = |p: Point<f64>| evaluate_f(&dom, &p, Metric::Straight, None);
    let cubic = fit_cell_cubic(f, Point::new(0.8, 0.8), 0.15).unwrap();
    let xr = cubic.dx_roots(0.6, 1.0);
    let yr = cubic.dy_roots(0.6, 1.0);
    assert!(xr.iter().any(|&x| (x - 0.75).abs() < 1e-6), "{xr:?}");
    assert!(yr.iter().any(|&y| (y - 0.75).abs() < 1e-6), "{yr:?}");
}

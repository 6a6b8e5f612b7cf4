use l1median::geom::{
    critical_vertices, ring_abs_moment, ring_area, trapezoidize, Axis, CriticalKind, GeomError,
    Location, Point,
};
use l1median::instances::{holed_square, l_shape, random_simple, unit_square};
use l1median::PolygonalDomain;

fn square() -> PolygonalDomain {
    unit_square().domain().unwrap()
}

#[test]
fn rejects_self_intersecting_outer() {
    // One edge dips below the base and crosses it; nonzero net area so the
    // failure is genuinely the crossing.
    let bow = vec![vec![(0.0, 0.0), (4.0, 0.0), (4.0, 2.0), (1.0, -1.0), (0.0, 2.0)]];
    match PolygonalDomain::validate(&bow) {
        Err(GeomError::SelfIntersection { .. }) => {}
        other => panic!("expected self-intersection, got {other:?}"),
    }
}

#[test]
fn rejects_hole_outside_outer() {
    let rings = vec![
        vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        vec![(2.0, 2.0), (3.0, 2.0), (3.0, 3.0), (2.0, 3.0)],
    ];
    assert!(matches!(
        PolygonalDomain::validate(&rings),
        Err(GeomError::HoleOutsideOuter { .. })
    ));
}

#[test]
fn rejects_degenerate_ring() {
    let line = vec![vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]];
    assert!(PolygonalDomain::validate(&line).is_err());
}

#[test]
fn normalizes_orientation() {
    // Outer given clockwise, hole counter-clockwise; both get flipped.
    let rings = vec![
        vec![(0.0, 0.0), (0.0, 4.0), (4.0, 4.0), (4.0, 0.0)],
        vec![(1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0)],
    ];
    let dom = PolygonalDomain::validate(&rings).unwrap();
    assert!(ring_area(dom.outer()) > 0.0);
    assert!(ring_area(&dom.holes()[0]) < 0.0);
    assert!((dom.area() - 12.0).abs() < 1e-12);
}

#[test]
fn locate_classifies_points() {
    let dom = holed_square().domain::<f64>().unwrap();
    assert_eq!(dom.locate(&Point::new(0.5, 0.5)), Location::Interior);
    assert_eq!(dom.locate(&Point::new(2.0, 2.0)), Location::Exterior); // hole
    assert_eq!(dom.locate(&Point::new(2.0, 1.0)), Location::Boundary); // hole edge
    assert_eq!(dom.locate(&Point::new(0.0, 2.0)), Location::Boundary);
    assert_eq!(dom.locate(&Point::new(-1.0, 2.0)), Location::Exterior);
}

#[test]
fn abs_moment_unit_square() {
    let dom = square();
    let rings: Vec<_> = dom.rings().cloned().collect();
    let mx = ring_abs_moment(&rings, Axis::X, 0.5);
    // ∫|x - 1/2| over the unit square = 1/4.
    assert!((mx - 0.25).abs() < 1e-14);
    let m0 = ring_abs_moment(&rings, Axis::X, 0.0);
    assert!((m0 - 0.5).abs() < 1e-14);
}

#[test]
fn trapezoidization_of_l_shape() {
    let dom = l_shape().domain::<f64>().unwrap();
    let tr = trapezoidize(&dom, Axis::X).unwrap();
    // Two slabs: [0,1] of height 2 and [1,2] of height 1.
    assert_eq!(tr.traps.len(), 2);
    assert!((tr.total_area() - 3.0).abs() < 1e-12);
    assert!(tr.is_tree());
    let tr_y = trapezoidize(&dom, Axis::Y).unwrap();
    assert_eq!(tr_y.traps.len(), 2);
    assert!((tr_y.total_area() - 3.0).abs() < 1e-12);
}

#[test]
fn trapezoidization_covers_random_polygons() {
    for seed in 0..20 {
        let inst = random_simple(12, seed);
        let dom = inst.domain::<f64>().unwrap();
        for axis in [Axis::X, Axis::Y] {
            let tr = trapezoidize(&dom, axis).unwrap();
            assert!(
                (tr.total_area() - dom.area()).abs() < 1e-9 * (dom.area() + 1.0),
                "seed {seed}: trapezoid area {} vs domain {}",
                tr.total_area(),
                dom.area()
            );
            assert!(tr.is_tree(), "seed {seed}: dual graph is not a tree");
        }
    }
}

#[test]
fn critical_vertices_of_l_shape() {
    let dom = l_shape().domain::<f64>().unwrap();
    // The reflex corner (1,1) is critical for both sweep directions.
    for axis in [Axis::X, Axis::Y] {
        let crit = critical_vertices(&dom, axis);
        let at_corner: Vec<_> = crit
            .iter()
            .filter(|c| (c.point.x - 1.0).abs() < 1e-12 && (c.point.y - 1.0).abs() < 1e-12)
            .collect();
        assert_eq!(at_corner.len(), 1);
        assert_eq!(at_corner[0].kind, CriticalKind::Min);
    }
}

#[test]
fn convex_polygon_has_no_critical_vertices() {
    let dom = square();
    assert!(critical_vertices(&dom, Axis::X).is_empty());
    assert!(critical_vertices(&dom, Axis::Y).is_empty());
}

use l1median::geom::Point;
use l1median::instances::random_holed;
use l1median::objective::evaluate_f;
use l1median::Metric;
use l1median::spm::{build_spm, SpmEngine, DIFF_NS, DIFF_OPS};
use std::sync::atomic::Ordering;

#[test]
fn scratch() {
    let inst = random_holed(14, 2, 5);
    let dom = inst.domain::<f64>().unwrap();
    let engine = SpmEngine::new(&dom).unwrap();
    let z = Point::new(-0.14, 0.168);
    let t = std::time::Instant::now();
    for _ in 0..20 {
        let _ = evaluate_f(&dom, &z, Metric::Geodesic, Some(&engine)).unwrap();
    }
    println!("evaluate_f {:?}", t.elapsed() / 20);
    DIFF_OPS.store(0, Ordering::Relaxed);
    DIFF_NS.store(0, Ordering::Relaxed);
    let t = std::time::Instant::now();
    for _ in 0..20 {
        let _ = build_spm(&engine, &z, false).unwrap();
    }
    println!("build_spm  {:?}", t.elapsed() / 20);
    let ops = DIFF_OPS.load(Ordering::Relaxed);
    let ns = DIFF_NS.load(Ordering::Relaxed);
    println!("diff ops {} total, {:.1?} each, {:.1?} per spm",
        ops, std::time::Duration::from_nanos(ns / ops.max(1) as u64),
        std::time::Duration::from_nanos(ns / 20));
}

//! SVG diagnostics: domains, shortest-path maps (cells, bisectors,
//! watersheds as separate layers) and overlay subdivisions.

use crate::geom::{Point, PolygonalDomain, Ring};
use crate::scalar::Scalar;
use crate::solver::Overlay;
use crate::spm::ShortestPathMap;
use std::fmt::Write;

const PALETTE: [&str; 8] = [
    "#7fc97f", "#beaed4", "#fdc086", "#ffff99", "#386cb0", "#f0027f", "#bf5b17", "#a6d854",
];

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn of<F: Scalar>(domain: &PolygonalDomain<F>) -> Frame {
        let (lo, hi) = domain.bbox();
        let w = (hi.x - lo.x).to_f64_lossy().fmax(1e-9);
        let h = (hi.y - lo.y).to_f64_lossy().fmax(1e-9);
        Frame {
            min_x: lo.x.to_f64_lossy(),
            max_y: hi.y.to_f64_lossy(),
            scale: 800.0 / w.fmax(h),
        }
    }

    fn map<F: Scalar>(&self, p: &Point<F>) -> (f64, f64) {
        (
            (p.x.to_f64_lossy() - self.min_x) * self.scale + 20.0,
            (self.max_y - p.y.to_f64_lossy()) * self.scale + 20.0,
        )
    }

    fn path<F: Scalar>(&self, ring: &Ring<F>) -> String {
        let mut d = String::new();
        for (i, p) in ring.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{:.3} {:.3} ", if i == 0 { "M" } else { "L" }, x, y);
        }
        d.push('Z');
        d
    }

    fn polyline<F: Scalar>(&self, pts: &[Point<F>]) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{:.3} {:.3} ", if i == 0 { "M" } else { "L" }, x, y);
        }
        d
    }
}

fn header() -> String {
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"840\">\n".to_string()
}

fn domain_layer<F: Scalar>(domain: &PolygonalDomain<F>, frame: &Frame) -> String {
    let mut out = String::from("<g id=\"domain\" fill=\"none\" stroke=\"#222\" stroke-width=\"1.5\">\n");
    for ring in domain.rings() {
        let _ = writeln!(out, "  <path d=\"{}\"/>", frame.path(ring));
    }
    out.push_str("</g>\n");
    out
}

/// Render a shortest-path map: colored cells, thin bisectors, dashed
/// watersheds, and the source point.
pub fn render_spm<F: Scalar>(domain: &PolygonalDomain<F>, spm: &ShortestPathMap<F>) -> String {
    let frame = Frame::of(domain);
    let mut out = header();

    out.push_str("<g id=\"cells\" stroke=\"none\" fill-opacity=\"0.55\">\n");
    for (i, cell) in spm.cells.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for ring in cell.signed_rings() {
            let _ = writeln!(out, "  <path d=\"{}\" fill=\"{}\"/>", frame.path(&ring), color);
        }
    }
    out.push_str("</g>\n");
    out.push_str(&domain_layer(domain, &frame));

    out.push_str("<g id=\"bisectors\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\">\n");
    for chain in spm.bisectors.iter().filter(|c| !c.watershed) {
        let _ = writeln!(out, "  <path d=\"{}\"/>", frame.polyline(&chain.polyline));
    }
    out.push_str("</g>\n");
    out.push_str(
        "<g id=\"watersheds\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6 4\">\n",
    );
    for chain in spm.bisectors.iter().filter(|c| c.watershed) {
        let _ = writeln!(out, "  <path d=\"{}\"/>", frame.polyline(&chain.polyline));
    }
    out.push_str("</g>\n");

    let (x, y) = frame.map(&spm.source);
    let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"#000\"/>");
    out.push_str("</svg>\n");
    out
}

/// Render an overlay subdivision with its faces tinted.
pub fn render_overlay<F: Scalar>(domain: &PolygonalDomain<F>, overlay: &Overlay<F>) -> String {
    let frame = Frame::of(domain);
    let mut out = header();
    out.push_str("<g id=\"faces\" stroke=\"#999\" stroke-width=\"0.5\" fill-opacity=\"0.4\">\n");
    for (i, face) in overlay.faces.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, "  <path d=\"{}\" fill=\"{}\"/>", frame.path(&face.ring), color);
    }
    out.push_str("</g>\n");
    out.push_str(&domain_layer(domain, &frame));
    out.push_str("</svg>\n");
    out
}

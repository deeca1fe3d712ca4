//! Deterministic SVG 1.1 rendering of curves with optional markers at
//! self-intersection image points. View box fitted with a 5% margin,
//! stroke width 0.5% of the extent, all coordinates at 9 significant
//! digits.

use selfx_core::C64;

/// Fixed 9-significant-digit decimal formatting.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    format!("{:.*}", decimals, x)
}

pub fn render_svg(points: &[C64], closed: bool, markers: &[C64]) -> String {
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points.iter().chain(markers.iter()) {
        min_x = min_x.min(p.re);
        max_x = max_x.max(p.re);
        min_y = min_y.min(-p.im);
        max_y = max_y.max(-p.im);
    }
    let extent = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.05 * extent;
    let vb = format!(
        "{} {} {} {}",
        sig9(min_x - margin),
        sig9(min_y - margin),
        sig9(max_x - min_x + 2.0 * margin),
        sig9(max_y - min_y + 2.0 * margin)
    );
    let stroke = 0.005 * extent;
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let cmd = if i == 0 { "M" } else { "L" };
        d.push_str(&format!("{cmd}{} {} ", sig9(p.re), sig9(-p.im)));
    }
    if closed {
        d.push('Z');
    }
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{vb}\">\n"
    ));
    out.push_str(&format!(
        "  <path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>\n",
        d.trim_end(),
        sig9(stroke)
    ));
    for m in markers {
        out.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"red\" class=\"crossing\"/>\n",
            sig9(m.re),
            sig9(-m.im),
            sig9(0.015 * extent)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Deduplicate marker locations: crossings sharing an image point (a
/// k-fold point hosts C(k,2) pairs) produce a single marker.
pub fn dedup_markers(images: &[C64]) -> Vec<C64> {
    let extent = images.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let tol = 1e-6 * (1.0 + extent);
    let mut out: Vec<C64> = Vec::new();
    for &im in images {
        if out.iter().all(|&q| (q - im).norm() > tol) {
            out.push(im);
        }
    }
    out
}

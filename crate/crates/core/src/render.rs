//! Deterministic SVG rendering of colored point sets. The only module that
//! touches floating point; nothing here feeds back into any decision.

use crate::error::{Error, Result};
use crate::geom::Rat;
use crate::visibility::{visibility_graph, ColoredPointSet};
use num::ToPrimitive;

/// Rendering options.
#[derive(Debug, Clone)]
pub struct RenderStyle {
    /// Canvas width in pixels; height follows the aspect ratio.
    pub width: f64,
    /// Draw a thin segment through every blocked same-colored pair.
    pub blocked_segments: bool,
    pub point_radius: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle { width: 480.0, blocked_segments: true, point_radius: 4.0 }
    }
}

const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#000000", "#9467bd", "#ff7f0e", "#17becf", "#8c564b",
];

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Render the set as an SVG 1.1 document: fixed viewport from the exact
/// bounding box with a 5% margin, one mark per point keyed by color index.
pub fn render_svg(set: &ColoredPointSet, style: &RenderStyle) -> Result<String> {
    if set.len() > 10_000 {
        return Err(Error::invalid("render supports at most 10000 points"));
    }
    let xs: Vec<&Rat> = set.points().iter().map(|p| &p.x).collect();
    let ys: Vec<&Rat> = set.points().iter().map(|p| &p.y).collect();
    let min_x = to_f64(xs.iter().min().unwrap());
    let max_x = to_f64(xs.iter().max().unwrap());
    let min_y = to_f64(ys.iter().min().unwrap());
    let max_y = to_f64(ys.iter().max().unwrap());
    let span_x = (max_x - min_x).max(1e-9);
    let span_y = (max_y - min_y).max(1e-9);
    let margin_x = span_x * 0.05;
    let margin_y = span_y * 0.05;
    let width = style.width;
    let height = width * (span_y + 2.0 * margin_y) / (span_x + 2.0 * margin_x);
    let sx = |x: f64| (x - min_x + margin_x) / (span_x + 2.0 * margin_x) * width;
    // SVG y grows downward.
    let sy = |y: f64| height - (y - min_y + margin_y) / (span_y + 2.0 * margin_y) * height;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width:.2}\" height=\"{height:.2}\" \
         viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    if style.blocked_segments {
        let g = visibility_graph(set.points());
        for u in 0..set.len() {
            for v in (u + 1)..set.len() {
                if set.color(u) == set.color(v) && !g.edge(u, v) {
                    let a = set.point(u);
                    let b = set.point(v);
                    svg.push_str(&format!(
                        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
                         stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n",
                        sx(to_f64(&a.x)),
                        sy(to_f64(&a.y)),
                        sx(to_f64(&b.x)),
                        sy(to_f64(&b.y)),
                    ));
                }
            }
        }
    }
    for (p, &c) in set.points().iter().zip(set.colors()) {
        svg.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{}\" fill=\"{}\"/>\n",
            sx(to_f64(&p.x)),
            sy(to_f64(&p.y)),
            style.point_radius,
            PALETTE[c % PALETTE.len()],
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

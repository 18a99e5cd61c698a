//! SVG drawings of planar instances.
//!
//! One `<g>` per class holding one `<rect>` per box, optional point markers
//! drawn as crosses. The output depends only on the input and options.

use std::fmt::Write;

use helly_core::{Family, Point};

const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"];

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Width of the drawing area in pixels; the height follows the aspect ratio.
    pub width: f64,
    pub margin: f64,
    pub fill_opacity: f64,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 640.0, margin: 20.0, fill_opacity: 0.2, title: None }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("only planar instances can be drawn (dim = {0})")]
pub struct NotPlanar(pub usize);

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Draws each class in its own colour with `marks` on top. Dots (such as the
/// points of a cluster instance) are drawn as small circles.
pub fn render(classes: &[&Family], marks: &[Point], dots: &[Point], opts: &SvgOptions) -> Result<String, NotPlanar> {
    for f in classes {
        if let Some(d) = f.dim().filter(|&d| d != 2) {
            return Err(NotPlanar(d));
        }
    }
    if let Some(p) = marks.iter().chain(dots).find(|p| p.dim() != 2) {
        return Err(NotPlanar(p.dim()));
    }

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for b in classes.iter().flat_map(|f| f.boxes()) {
        xs.extend([b.side(0).lo().to_f64(), b.side(0).hi().to_f64()]);
        ys.extend([b.side(1).lo().to_f64(), b.side(1).hi().to_f64()]);
    }
    for p in marks.iter().chain(dots) {
        xs.push(p.coords()[0].to_f64());
        ys.push(p.coords()[1].to_f64());
    }
    let span = |v: &[f64]| -> (f64, f64) {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() && hi > lo {
            (lo, hi)
        } else if lo.is_finite() {
            (lo - 0.5, lo + 0.5)
        } else {
            (0.0, 1.0)
        }
    };
    let (x0, x1) = span(&xs);
    let (y0, y1) = span(&ys);
    let scale = (opts.width - 2.0 * opts.margin) / (x1 - x0);
    let height = (y1 - y0) * scale + 2.0 * opts.margin;
    let sx = |x: f64| opts.margin + (x - x0) * scale;
    // SVG's y axis points down.
    let sy = |y: f64| opts.margin + (y1 - y) * scale;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.3}" height="{:.3}" viewBox="0 0 {:.3} {:.3}">"#,
        opts.width, height, opts.width, height
    );
    if let Some(t) = &opts.title {
        let _ = writeln!(out, "  <title>{}</title>", escape(t));
    }
    let _ = writeln!(out, r##"  <rect x="0" y="0" width="{:.3}" height="{height:.3}" fill="#ffffff"/>"##, opts.width);
    for (k, f) in classes.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"  <g id="class-{k}" stroke="{color}" fill="{color}" fill-opacity="{}">"#,
            opts.fill_opacity
        );
        for (i, b) in f.boxes().iter().enumerate() {
            let (lx, hx) = (b.side(0).lo().to_f64(), b.side(0).hi().to_f64());
            let (ly, hy) = (b.side(1).lo().to_f64(), b.side(1).hi().to_f64());
            let label = f.labels().map_or_else(|| format!("class {k}, box {i}"), |l| l[i].clone());
            let _ = writeln!(
                out,
                r#"    <rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"><title>{}</title></rect>"#,
                sx(lx),
                sy(hy),
                (hx - lx) * scale,
                (hy - ly) * scale,
                escape(&label)
            );
        }
        let _ = writeln!(out, "  </g>");
    }
    if !dots.is_empty() {
        let _ = writeln!(out, r##"  <g id="points" fill="#333333">"##);
        for p in dots {
            let (x, y) = (sx(p.coords()[0].to_f64()), sy(p.coords()[1].to_f64()));
            let _ = writeln!(out, r#"    <circle cx="{x:.3}" cy="{y:.3}" r="1.5"/>"#);
        }
        let _ = writeln!(out, "  </g>");
    }
    if !marks.is_empty() {
        let _ = writeln!(out, r##"  <g id="marks" stroke="#000000" stroke-width="2">"##);
        for p in marks {
            let (x, y) = (sx(p.coords()[0].to_f64()), sy(p.coords()[1].to_f64()));
            let _ = writeln!(
                out,
                r#"    <path d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}"><title>{:?}</title></path>"#,
                x - 5.0,
                y - 5.0,
                x + 5.0,
                y + 5.0,
                x - 5.0,
                y + 5.0,
                x + 5.0,
                y - 5.0,
                p
            );
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

//! Self-contained SVG figures of angle lists on the unit circle.

use std::fmt::Write;

use pisot_core::spacing::AngleList;

#[derive(Clone, Debug, PartialEq)]
pub struct SvgStyle {
    /// Width and height in pixels.
    pub size: u32,
    pub stroke_width: f64,
    pub point_radius: f64,
    /// Segments from the center to each point.
    pub petals: bool,
    /// Polyline through the points in order, as for cusp curves.
    pub polyline: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { size: 800, stroke_width: 1.0, point_radius: 2.5, petals: true, polyline: false }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Unit circle plus the points `e^(i theta)`; `y` grows upward as in the
/// usual picture of the complex plane.
pub fn angles_svg(angles: &AngleList, style: &SvgStyle, title: &str) -> String {
    let size = style.size as f64;
    let c = size / 2.0;
    let r = 0.45 * size;
    let pt = |t: f64| (c + r * t.cos(), c - r * t.sin());
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = style.size
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<circle cx="{c:.3}" cy="{c:.3}" r="{r:.3}" fill="none" stroke="gray" stroke-width="{:.3}"/>"#,
        style.stroke_width
    )
    .unwrap();
    let w = style.stroke_width;
    if style.petals {
        writeln!(out, r#"<g stroke="steelblue" stroke-width="{w:.3}">"#).unwrap();
        for &t in angles.angles() {
            let (x, y) = pt(t);
            writeln!(out, r#"<line x1="{c:.3}" y1="{c:.3}" x2="{x:.3}" y2="{y:.3}"/>"#).unwrap();
        }
        out.push_str("</g>\n");
    }
    if style.polyline && !angles.is_empty() {
        let points: Vec<String> = angles.angles().iter().map(|&t| pt(t)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        writeln!(
            out,
            r#"<polyline fill="none" stroke="firebrick" stroke-width="{w:.3}" points="{}"/>"#,
            points.join(" ")
        )
        .unwrap();
    }
    writeln!(out, r#"<g fill="black">"#).unwrap();
    for &t in angles.angles() {
        let (x, y) = pt(t);
        writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#, style.point_radius).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

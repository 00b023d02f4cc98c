//! SVG rendering of layered drawings, all layers overlaid.

use std::fmt::Write;

use crate::mapped::SimultaneousEmbedding;

#[derive(Debug, Clone, PartialEq)]
pub struct LayerStyle {
    pub stroke: String,
    pub width: f64,
    pub dash: Option<String>,
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Distinct colours, with dashes once the palette repeats.
pub fn default_styles(layers: usize) -> Vec<LayerStyle> {
    (0..layers)
        .map(|i| LayerStyle {
            stroke: PALETTE[i % PALETTE.len()].to_string(),
            width: 2.0,
            dash: (i >= PALETTE.len()).then(|| "6 3".to_string()),
        })
        .collect()
}

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 30.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Larger `y` is drawn higher. Points are labelled by `labels[i]`, or by
/// index when `labels` is shorter. Missing styles fall back to defaults.
pub fn render_svg(e: &SimultaneousEmbedding, labels: &[String], styles: &[LayerStyle]) -> String {
    let min_x = e.coords.iter().map(|p| p.x).min().unwrap_or(0) as f64;
    let max_x = e.coords.iter().map(|p| p.x).max().unwrap_or(0) as f64;
    let min_y = e.coords.iter().map(|p| p.y).min().unwrap_or(0) as f64;
    let max_y = e.coords.iter().map(|p| p.y).max().unwrap_or(0) as f64;
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    let sx = |x: i64| MARGIN + (x as f64 - min_x) * scale;
    let sy = |y: i64| CANVAS - MARGIN - (y as f64 - min_y) * scale;
    let fallback = default_styles(e.layers.len());

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, edges) in e.layers.iter().enumerate() {
        let st = styles.get(i).unwrap_or(&fallback[i]);
        let dash = st
            .dash
            .as_ref()
            .map(|d| format!(r#" stroke-dasharray="{}""#, escape(d)))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            r#"<g id="layer-{i}" stroke="{}" stroke-width="{}"{dash} fill="none">"#,
            escape(&st.stroke),
            st.width
        );
        for &(a, b) in edges {
            let (p, q) = (e.position(i, a), e.position(i, b));
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                sx(p.x),
                sy(p.y),
                sx(q.x),
                sy(q.y)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r#"<g id="vertices" font-family="sans-serif" font-size="12">"#);
    for (i, p) in e.coords.iter().enumerate() {
        let label = labels.get(i).cloned().unwrap_or_else(|| i.to_string());
        let (x, y) = (sx(p.x), sy(p.y));
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="black"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 7.0, y - 7.0, escape(&label));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

//! Dependency-free SVG rendering of the honesty-accuracy curve.
//!
//! The CSV is the canonical plotting input; this renderer exists so a sweep
//! can drop a quick-look chart next to it without any graphics stack.

use std::fmt::Write as _;

use crate::metrics::CurvePoint;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

fn x_pos(tau: f64) -> f64 {
    MARGIN + tau * (WIDTH - 2.0 * MARGIN)
}

/// y axis spans [-1, 1]: honesty can go negative, the rest live in [0, 1].
fn y_pos(value: f64) -> f64 {
    let clamped = value.clamp(-1.0, 1.0);
    HEIGHT - MARGIN - (clamped + 1.0) / 2.0 * (HEIGHT - 2.0 * MARGIN)
}

fn polyline(points: &[CurvePoint], pick: impl Fn(&CurvePoint) -> f64, color: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|p| format!("{:.1},{:.1}", x_pos(p.tau), y_pos(pick(p))))
        .collect();
    format!(
        "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

/// Render the sweep as a self-contained SVG document.
pub fn render_curve_svg(points: &[CurvePoint]) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\" font-size=\"12\">"
    );
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Gridlines and axis labels at y in {-1, -0.5, 0, 0.5, 1}.
    for i in 0..=4 {
        let value = -1.0 + i as f64 * 0.5;
        let y = y_pos(value);
        let _ = writeln!(
            svg,
            "  <line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>",
            MARGIN,
            WIDTH - MARGIN
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{value:.1}</text>",
            MARGIN - 6.0,
            y + 4.0
        );
    }
    for i in 0..=4 {
        let tau = i as f64 * 0.25;
        let x = x_pos(tau);
        let _ = writeln!(
            svg,
            "  <text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{tau:.2}</text>",
            HEIGHT - MARGIN + 18.0
        );
    }
    let _ = writeln!(
        svg,
        "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">tau</text>",
        WIDTH / 2.0,
        HEIGHT - 8.0
    );

    svg.push_str(&polyline(points, |p| p.accuracy, "#1f77b4"));
    svg.push_str(&polyline(points, |p| p.honesty, "#d62728"));
    svg.push_str(&polyline(points, |p| p.answered_fraction, "#2ca02c"));

    let legend = [
        ("accuracy", "#1f77b4"),
        ("honesty", "#d62728"),
        ("answered", "#2ca02c"),
    ];
    for (i, (label, color)) in legend.iter().enumerate() {
        let y = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"10\" height=\"10\" fill=\"{color}\"/>",
            WIDTH - MARGIN - 110.0,
            y
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.1}\" y=\"{:.1}\">{label}</text>",
            WIDTH - MARGIN - 94.0,
            y + 9.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

//! Minimal self-contained SVG scatter rendering. No external renderer; the
//! output is a plain `<svg>` document with axis frame, points and labels.

use charnet_core::numfmt::sig6;

const WIDTH: f64 = 420.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

pub struct Series {
    pub points: Vec<(f64, f64, String)>,
}

/// Renders one scatter panel. Points carry an optional text label drawn next
/// to the marker.
pub fn scatter(title: &str, x_label: &str, y_label: &str, series: &Series) -> String {
    let xs: Vec<f64> = series.points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = series.points.iter().map(|p| p.1).collect();
    let (x_min, x_max) = padded_range(&xs);
    let (y_min, y_max) = padded_range(&ys);

    let to_x = |x: f64| MARGIN + (x - x_min) / (x_max - x_min) * (WIDTH - 2.0 * MARGIN);
    let to_y = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    // axis frame
    svg.push_str(&format!(
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    ));
    // axis labels and extrema
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        WIDTH / 2.0,
        HEIGHT - 10.0,
        escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"14\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 14 {})\">{}</text>\n",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    ));
    for (value, x, y, anchor) in [
        (x_min, MARGIN, HEIGHT - MARGIN + 14.0, "middle"),
        (x_max, WIDTH - MARGIN, HEIGHT - MARGIN + 14.0, "middle"),
        (y_min, MARGIN - 4.0, HEIGHT - MARGIN, "end"),
        (y_max, MARGIN - 4.0, MARGIN + 4.0, "end"),
    ] {
        svg.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"{anchor}\" font-family=\"sans-serif\" font-size=\"9\">{}</text>\n",
            sig6(value)
        ));
    }
    for (x, y, label) in &series.points {
        let (px, py) = (to_x(*x), to_y(*y));
        svg.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"steelblue\"/>\n",
            sig6(px),
            sig6(py)
        ));
        if !label.is_empty() {
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"9\">{}</text>\n",
                sig6(px + 4.0),
                sig6(py - 4.0),
                escape(label)
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// Stacks several panels vertically into one document.
pub fn stack(panels: &[String]) -> String {
    let total_height = HEIGHT * panels.len() as f64;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{total_height}\" viewBox=\"0 0 {WIDTH} {total_height}\">\n"
    );
    for (i, panel) in panels.iter().enumerate() {
        svg.push_str(&format!(
            "<g transform=\"translate(0 {})\">\n",
            HEIGHT * i as f64
        ));
        // strip the outer <svg> wrapper of the panel
        let inner: String = panel
            .lines()
            .filter(|l| !l.starts_with("<svg") && !l.starts_with("</svg>"))
            .collect::<Vec<_>>()
            .join("\n");
        svg.push_str(&inner);
        svg.push_str("\n</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}

fn padded_range(values: &[f64]) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !min.is_finite() || !max.is_finite() {
        return (0.0, 1.0);
    }
    if min == max {
        return (min - 0.5, max + 0.5);
    }
    let pad = (max - min) * 0.05;
    (min - pad, max + pad)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

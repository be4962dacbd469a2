//! Minimal SVG line plots: one polyline per difference sequence, a light
//! axis frame, and a legend. Textual and diffable on purpose.

/// One plotted sequence.
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub values: Vec<f64>,
}

pub const COLOR_CLOSED: &str = "#e69f00"; // G-K series
pub const COLOR_OPEN: &str = "#0072b2"; // G-U series

const W: f64 = 640.0;
const H: f64 = 360.0;
const MARGIN: f64 = 42.0;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn panel_svg(out: &mut String, title: &str, series: &[Series], y_offset: f64) {
    let n = series.iter().map(|s| s.values.len()).max().unwrap_or(0);
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for s in series {
        for &v in &s.values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if hi - lo < 1e-12 {
        hi = lo + 1.0;
    }
    let x_of = |i: usize| {
        if n <= 1 {
            MARGIN + (W - 2.0 * MARGIN) / 2.0
        } else {
            MARGIN + (W - 2.0 * MARGIN) * i as f64 / (n - 1) as f64
        }
    };
    let y_of = |v: f64| y_offset + H - MARGIN - (H - 2.0 * MARGIN) * (v - lo) / (hi - lo);

    out.push_str(&format!(
        "<g><text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" font-family=\"sans-serif\">{}</text>\n",
        MARGIN,
        y_offset + 18.0,
        xml_escape(title)
    ));
    // axis frame and the zero line
    out.push_str(&format!(
        "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n",
        MARGIN,
        y_offset + MARGIN,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    ));
    if lo < 0.0 && hi > 0.0 {
        let y0 = y_of(0.0);
        out.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y0:.1}\" x2=\"{:.1}\" y2=\"{y0:.1}\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>\n",
            MARGIN,
            W - MARGIN
        ));
    }
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" font-family=\"sans-serif\" fill=\"#555\">{:.3}</text>\n",
        4.0,
        y_of(hi) + 4.0,
        hi
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" font-family=\"sans-serif\" fill=\"#555\">{:.3}</text>\n",
        4.0,
        y_of(lo) + 4.0,
        lo
    ));
    for (si, s) in series.iter().enumerate() {
        let points: Vec<String> = s
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{:.2},{:.2}", x_of(i), y_of(v)))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            s.color,
            points.join(" ")
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" font-family=\"sans-serif\" fill=\"{}\">{}</text>\n",
            W - MARGIN - 80.0,
            y_offset + MARGIN + 14.0 + 14.0 * si as f64,
            s.color,
            xml_escape(&s.label)
        ));
    }
    out.push_str("</g>\n");
}

/// A stack of panels, each with its own title and difference series.
pub fn render(panels: &[(String, Vec<Series>)]) -> String {
    let total_h = H * panels.len().max(1) as f64;
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{total_h}\" viewBox=\"0 0 {W} {total_h}\">\n"
    );
    for (i, (title, series)) in panels.iter().enumerate() {
        panel_svg(&mut out, title, series, H * i as f64);
    }
    out.push_str("</svg>\n");
    out
}

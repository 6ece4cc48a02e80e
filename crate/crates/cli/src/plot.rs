//! Minimal standalone SVG line plots.

use std::fmt::Write;

use crate::record::format_number;

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;
pub const MARGIN_LEFT: f64 = 70.0;
pub const MARGIN_RIGHT: f64 = 20.0;
pub const MARGIN_TOP: f64 = 30.0;
pub const MARGIN_BOTTOM: f64 = 50.0;
const TICKS: usize = 5;

/// A curve and the data ranges its axes span.
#[derive(Debug, Clone, PartialEq)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub points: Vec<(f64, f64)>,
}

impl LinePlot {
    /// Pixel position of a data point.
    pub fn to_pixel(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        let inner_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let inner_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        (
            MARGIN_LEFT + (x - x0) / (x1 - x0) * inner_w,
            HEIGHT - MARGIN_BOTTOM - (y - y0) / (y1 - y0) * inner_h,
        )
    }

    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        let (left, right) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
        let (top, bottom) = (MARGIN_TOP, HEIGHT - MARGIN_BOTTOM);
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
        );
        let _ = writeln!(s, "  <title>{}</title>", escape(&self.title));
        if let Some(&(x, y)) = self.points.last() {
            let _ = writeln!(
                s,
                "  <desc>{} samples, last point ({}, {})</desc>",
                self.points.len(),
                format_number(x),
                format_number(y)
            );
        }
        let _ = writeln!(
            s,
            "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
        );
        let _ = writeln!(s, "  <g id=\"axes\" stroke=\"black\" stroke-width=\"1\">");
        let _ = writeln!(
            s,
            "    <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\"/>"
        );
        let _ = writeln!(
            s,
            "    <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{left}\" y2=\"{top}\"/>"
        );
        s.push_str("  </g>\n");
        s.push_str("  <g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n");
        for i in 0..=TICKS {
            let f = i as f64 / TICKS as f64;
            let xv = self.x_range.0 + f * (self.x_range.1 - self.x_range.0);
            let yv = self.y_range.0 + f * (self.y_range.1 - self.y_range.0);
            let (px, _) = self.to_pixel((xv, self.y_range.0));
            let (_, py) = self.to_pixel((self.x_range.0, yv));
            let _ = writeln!(
                s,
                "    <line x1=\"{px:.2}\" y1=\"{bottom}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
                bottom + 5.0
            );
            let _ = writeln!(
                s,
                "    <text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
                bottom + 18.0,
                tick_label(xv)
            );
            let _ = writeln!(
                s,
                "    <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{left}\" y2=\"{py:.2}\" stroke=\"black\"/>",
                left - 5.0
            );
            let _ = writeln!(
                s,
                "    <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
                left - 8.0,
                py + 4.0,
                tick_label(yv)
            );
        }
        s.push_str("  </g>\n");
        let _ = writeln!(
            s,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
            0.5 * (left + right),
            HEIGHT - 10.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            "  <text x=\"16\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">{}</text>",
            0.5 * (top + bottom),
            0.5 * (top + bottom),
            escape(&self.y_label)
        );
        let _ = writeln!(
            s,
            "  <text x=\"{:.2}\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
            0.5 * (left + right),
            escape(&self.title)
        );
        let coords: Vec<String> = self
            .points
            .iter()
            .map(|&p| {
                let (px, py) = self.to_pixel(p);
                format!("{px:.3},{py:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            "  <polyline id=\"curve\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"{}\"/>",
            coords.join(" ")
        );
        s.push_str("</svg>\n");
        s
    }
}

fn tick_label(v: f64) -> String {
    let text = format!("{v:.4}");
    let text = text.trim_end_matches('0');
    text.strip_suffix('.').unwrap_or(text).to_string()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

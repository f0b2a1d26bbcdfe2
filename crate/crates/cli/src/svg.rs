//! Minimal self-contained SVG line charts with a logarithmic y axis.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

pub struct Chart<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// Values plotted at x = 0, 1, 2, ….
    pub values: &'a [f64],
    /// Inclusive index range drawn in a highlight colour.
    pub highlight: Option<(usize, usize)>,
    pub highlight_label: Option<&'a str>,
    pub version: &'a str,
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl Chart<'_> {
    pub fn render(&self) -> String {
        let positive: Vec<f64> = self
            .values
            .iter()
            .copied()
            .filter(|v| *v > 0.0 && v.is_finite())
            .collect();
        let (mut lo, mut hi) = positive
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                (a.min(v.log10()), b.max(v.log10()))
            });
        if !lo.is_finite() {
            (lo, hi) = (-1.0, 0.0);
        }
        let (lo, hi) = (lo.floor(), hi.ceil().max(lo.floor() + 1.0));
        let x_max = (self.values.len().max(2) - 1) as f64;
        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let px = |k: f64| LEFT + plot_w * k / x_max;
        // Zeros are pinned to the bottom edge.
        let py = |v: f64| {
            let l = if v > 0.0 { v.log10().max(lo) } else { lo };
            TOP + plot_h * (hi - l) / (hi - lo)
        };

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, "<!-- krylov-sublab {} -->", esc(self.version));
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            WIDTH / 2.0,
            esc(self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        );
        for e in (lo as i32)..=(hi as i32) {
            let y = TOP + plot_h * (hi - e as f64) / (hi - lo);
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{e}</text>"##,
                LEFT + plot_w,
                LEFT - 6.0,
                y + 4.0
            );
        }
        let step = ((x_max / 10.0).ceil() as usize).max(1);
        for k in (0..=x_max as usize).step_by(step) {
            let x = px(k as f64);
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{k}</text>"#,
                TOP + plot_h + 16.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            HEIGHT - 12.0,
            esc(self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            TOP + plot_h / 2.0,
            TOP + plot_h / 2.0,
            esc(self.y_label)
        );

        let points: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| format!("{:.2},{:.2}", px(k as f64), py(*v)))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline fill="none" stroke="#1f77b4" stroke-width="2" points="{}"/>"##,
            points.join(" ")
        );
        for (k, v) in self.values.iter().enumerate() {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#1f77b4"/>"##,
                px(k as f64),
                py(*v)
            );
        }
        if let Some((a, b)) = self.highlight {
            let b = b.min(self.values.len().saturating_sub(1));
            let seg: Vec<String> = (a..=b)
                .map(|k| format!("{:.2},{:.2}", px(k as f64), py(self.values[k])))
                .collect();
            let _ = writeln!(
                s,
                r##"<polyline fill="none" stroke="#d62728" stroke-width="3.5" points="{}"/>"##,
                seg.join(" ")
            );
            if let Some(label) = self.highlight_label {
                let _ = writeln!(
                    s,
                    r##"<text x="{:.2}" y="{:.2}" fill="#d62728">{}</text>"##,
                    px(a as f64) + 8.0,
                    py(self.values[a]) - 8.0,
                    esc(label)
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

/// The SVG with its embedded version comment removed.
pub fn strip_version(svg: &str) -> String {
    svg.lines()
        .filter(|l| !l.starts_with("<!-- krylov-sublab "))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_self_contained_chart() {
        let values = [1.0, 0.5, 0.2, 0.0];
        let chart = Chart {
            title: "t <1>",
            x_label: "cycle",
            y_label: "norm",
            values: &values,
            highlight: Some((1, 2)),
            highlight_label: Some("drop"),
            version: "9.9.9",
        };
        let svg = chart.render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("t &lt;1&gt;"));
        assert!(svg.contains("krylov-sublab 9.9.9"));
        assert!(!svg.contains("href"));
        assert!(!strip_version(&svg).contains("9.9.9"));
    }
}

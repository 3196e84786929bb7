//! Dependency-free static SVG scatter plot: axes, ticks, point markers, and
//! an optional horizontal reference line.

use std::fmt::Write as _;

pub struct Scatter<'a> {
    pub points: &'a [(f64, f64)],
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// Horizontal reference (the predicted `Im λ` limit `-bj/2`); always
    /// included in the y-range.
    pub hline: Option<f64>,
}

const W: f64 = 900.0;
const H: f64 = 560.0;
const ML: f64 = 80.0;
const MR: f64 = 25.0;
const MT: f64 = 25.0;
const MB: f64 = 60.0;

fn ticks(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

impl Scatter<'_> {
    pub fn render(&self) -> String {
        let (mut x_lo, mut x_hi) = self
            .points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.0), hi.max(p.0))
            });
        let (mut y_lo, mut y_hi) = self
            .points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.1), hi.max(p.1))
            });
        if let Some(h) = self.hline {
            y_lo = y_lo.min(h);
            y_hi = y_hi.max(h);
        }
        if !x_lo.is_finite() {
            (x_lo, x_hi) = (0.0, 1.0);
            (y_lo, y_hi) = (0.0, 1.0);
        }
        let x_pad = 0.05 * (x_hi - x_lo).max(1e-12);
        let y_pad = 0.10 * (y_hi - y_lo).max(1e-12);
        let (x_lo, x_hi) = (x_lo - x_pad, x_hi + x_pad);
        let (y_lo, y_hi) = (y_lo - y_pad, y_hi + y_pad);

        let px = |x: f64| ML + (x - x_lo) / (x_hi - x_lo) * (W - ML - MR);
        let py = |y: f64| H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB);

        let mut s = String::new();
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
        );
        let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
        // axes
        let _ = writeln!(
            s,
            "<line x1=\"{ML}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
            H - MB,
            W - MR,
            H - MB
        );
        let _ = writeln!(
            s,
            "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{}\" stroke=\"black\"/>",
            H - MB
        );
        for t in ticks(x_lo, x_hi, 6) {
            let x = px(t);
            let _ = writeln!(
                s,
                "<line x1=\"{x:.2}\" y1=\"{}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"black\"/>",
                H - MB,
                H - MB + 6.0
            );
            let _ = writeln!(
                s,
                "<text x=\"{x:.2}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
                H - MB + 22.0,
                fmt_tick(t)
            );
        }
        for t in ticks(y_lo, y_hi, 6) {
            let y = py(t);
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{y:.2}\" x2=\"{ML}\" y2=\"{y:.2}\" stroke=\"black\"/>",
                ML - 6.0
            );
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"end\">{}</text>",
                ML - 10.0,
                y + 4.0,
                fmt_tick(t)
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
            (ML + W - MR) / 2.0,
            H - 14.0,
            self.x_label
        );
        let _ = writeln!(
            s,
            "<text x=\"20\" y=\"{}\" font-size=\"15\" text-anchor=\"middle\" transform=\"rotate(-90 20 {})\">{}</text>",
            (MT + H - MB) / 2.0,
            (MT + H - MB) / 2.0,
            self.y_label
        );
        if let Some(hv) = self.hline {
            let y = py(hv);
            let _ = writeln!(
                s,
                "<line x1=\"{ML}\" y1=\"{y:.2}\" x2=\"{}\" y2=\"{y:.2}\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>",
                W - MR
            );
        }
        for &(x, y) in self.points {
            let _ = writeln!(
                s,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#1f77b4\"/>",
                px(x),
                py(y)
            );
        }
        let _ = writeln!(s, "</svg>");
        s
    }
}

//! Minimal deterministic SVG figures.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{HistogramRow, NeutralRow};
use crate::error::Result;
use crate::thermo::RateCurve;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn from_points(points: impl Iterator<Item = (f64, f64)>) -> Frame {
        let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut y0: f64 = 0.0;
        for (x, y) in points.filter(|(x, y)| x.is_finite() && y.is_finite()) {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            return Frame {
                x: (0.0, 1.0),
                y: (0.0, 1.0),
            };
        }
        if x1 <= x0 {
            x1 = x0 + 1.0;
        }
        if y1 <= y0 {
            y1 = y0 + 1.0;
        }
        Frame {
            x: (x0, x1),
            y: (y0, y0 + (y1 - y0) * 1.05),
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn open_svg(out: &mut String, frame: &Frame, title: &str, xlabel: &str, ylabel: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{title}</text>"#,
        WIDTH / 2.0
    );
    let (left, right) = (MARGIN, WIDTH - MARGIN);
    let (top, bottom) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{left:.2}" y1="{bottom:.2}" x2="{right:.2}" y2="{bottom:.2}"/><line x1="{left:.2}" y1="{bottom:.2}" x2="{left:.2}" y2="{top:.2}"/></g>"#
    );
    let _ = writeln!(out, r#"<g class="ticks" font-family="sans-serif" font-size="11">"#);
    for i in 0..=5 {
        let x = frame.x.0 + (frame.x.1 - frame.x.0) * i as f64 / 5.0;
        let px = frame.px(x);
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{x:.3}</text>"#,
            bottom + 4.0,
            bottom + 18.0
        );
        let y = frame.y.0 + (frame.y.1 - frame.y.0) * i as f64 / 5.0;
        let py = frame.py(y);
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{left:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{y:.3}</text>"#,
            left - 4.0,
            left - 7.0,
            py + 4.0
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13">{xlabel}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {:.2})">{ylabel}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
}

/// Polyline segments, split wherever the value is not finite.
fn polyline(out: &mut String, frame: &Frame, points: &[(f64, f64)], class: &str, style: &str) {
    let mut segment: Vec<String> = Vec::new();
    let flush = |segment: &mut Vec<String>, out: &mut String| {
        if segment.len() >= 2 {
            let _ = writeln!(
                out,
                r#"<polyline class="{class}" fill="none" {style} points="{}"/>"#,
                segment.join(" ")
            );
        }
        segment.clear();
    };
    for &(x, y) in points {
        if x.is_finite() && y.is_finite() {
            segment.push(format!("{:.2},{:.2}", frame.px(x), frame.py(y)));
        } else {
            flush(&mut segment, out);
        }
    }
    flush(&mut segment, out);
}

/// Rate curve with both branches, overlaid with empirical decay rates at bin
/// centres.
pub fn render_rate_svg(curve: Option<&RateCurve>, empirical: &[HistogramRow]) -> String {
    let curve_points = curve.into_iter().flat_map(|c| {
        c.points
            .iter()
            .flat_map(|p| [(p.t, p.value), (p.t, p.alpha.value), (p.t, p.beta.value)])
    });
    let emp_points = empirical
        .iter()
        .map(|r| (0.5 * (r.bin_lo + r.bin_hi), r.emp_rate));
    let frame = Frame::from_points(curve_points.chain(emp_points));

    let mut out = String::new();
    open_svg(&mut out, &frame, "Level-1 rate function", "t", "rate");
    if let Some(c) = curve {
        let series = |pick: fn(&crate::thermo::RatePoint) -> f64| -> Vec<(f64, f64)> {
            c.points.iter().map(|p| (p.t, pick(p))).collect()
        };
        polyline(
            &mut out,
            &frame,
            &series(|p| p.alpha.value),
            "I_alpha",
            r##"stroke="#1f77b4" stroke-width="1.5" stroke-dasharray="6 4""##,
        );
        polyline(
            &mut out,
            &frame,
            &series(|p| p.beta.value),
            "I_beta",
            r##"stroke="#d62728" stroke-width="1.5" stroke-dasharray="6 4""##,
        );
        polyline(&mut out, &frame, &series(|p| p.value), "I", r#"stroke="black" stroke-width="2""#);
    }
    let _ = writeln!(out, r##"<g class="empirical" fill="#555555">"##);
    for r in empirical.iter().filter(|r| r.emp_rate.is_finite()) {
        let x = 0.5 * (r.bin_lo + r.bin_hi);
        let _ = writeln!(
            out,
            r#"<circle data-n="{}" cx="{:.2}" cy="{:.2}" r="3"/>"#,
            r.n,
            frame.px(x),
            frame.py(r.emp_rate)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

/// `(1/n) log #Per_{0,n}` against its limit `log(2 √M)`.
pub fn render_neutral_svg(rows: &[NeutralRow]) -> String {
    let frame = Frame::from_points(
        rows.iter()
            .flat_map(|r| [(r.n as f64, r.rate), (r.n as f64, r.limit)]),
    );
    let mut out = String::new();
    open_svg(&mut out, &frame, "Neutral periodic points", "n", "(1/n) log #Per0");
    let rates: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.rate)).collect();
    let limits: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.limit)).collect();
    polyline(&mut out, &frame, &limits, "limit", r##"stroke="#d62728" stroke-dasharray="6 4""##);
    polyline(&mut out, &frame, &rates, "rate", r#"stroke="black" stroke-width="2""#);
    out.push_str("</svg>\n");
    out
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PlotTables<'a> {
    pub rate: Option<&'a RateCurve>,
    pub level1: &'a [HistogramRow],
    pub neutral: &'a [NeutralRow],
}

/// Writes `rate.svg` (when a curve or histogram is present) and `neutral.svg`
/// (when neutral rows are present) into `dir`.
pub fn export_plots(tables: &PlotTables<'_>, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    if tables.rate.is_some() || !tables.level1.is_empty() {
        let path = dir.join("rate.svg");
        std::fs::write(&path, render_rate_svg(tables.rate, tables.level1))?;
        written.push(path);
    }
    if !tables.neutral.is_empty() {
        let path = dir.join("neutral.svg");
        std::fs::write(&path, render_neutral_svg(tables.neutral))?;
        written.push(path);
    }
    Ok(written)
}

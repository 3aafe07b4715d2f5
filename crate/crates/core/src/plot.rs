//! Minimal deterministic SVG line plots for study outputs.

use std::fmt::Write;

use crate::control::MonteCarloResult;
use crate::error::{LiError, Result};
use crate::experiments::{RateSpec, StudyResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
    Faint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub style: LineStyle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub width: u32,
    pub height: u32,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self {
            title: String::new(),
            x_label: String::new(),
            y_label: String::new(),
            log_x: false,
            log_y: false,
            width: 640,
            height: 420,
        }
    }
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];
const MARGIN: f64 = 56.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render_svg(series: &[Series], opts: &PlotOptions) -> Result<String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(LiError::invalid("nothing to plot"));
    }
    let tx = |v: f64| if opts.log_x { v.log10() } else { v };
    let ty = |v: f64| if opts.log_y { v.log10() } else { v };
    let mut pts: Vec<Vec<(f64, f64)>> = Vec::with_capacity(series.len());
    for s in series {
        let mapped: Vec<(f64, f64)> = s.points.iter().map(|&(x, y)| (tx(x), ty(y))).collect();
        if mapped.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(LiError::Degenerate(format!(
                "series {:?} has values that cannot be drawn on the chosen axes",
                s.label
            )));
        }
        pts.push(mapped);
    }
    let all = pts.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 == x0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 == y0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let (w, h) = (opts.width as f64, opts.height as f64);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (w - 2.0 * MARGIN);
    let py = |y: f64| h - MARGIN - (y - y0) / (y1 - y0) * (h - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{m:.2}" y="{m:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        w - 2.0 * MARGIN,
        h - 2.0 * MARGIN,
        m = MARGIN
    );
    let axis_note = |log: bool, lo: f64, hi: f64| {
        if log {
            format!("{:.3e} .. {:.3e}", 10f64.powf(lo), 10f64.powf(hi))
        } else {
            format!("{lo:.3} .. {hi:.3}")
        }
    };
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{} [{}]</text>"#,
        w / 2.0,
        h - 12.0,
        escape(&opts.x_label),
        axis_note(opts.log_x, x0, x1)
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 14 {:.2})">{} [{}]</text>"#,
        h / 2.0,
        h / 2.0,
        escape(&opts.y_label),
        axis_note(opts.log_y, y0, y1)
    );
    if !opts.title.is_empty() {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            w / 2.0,
            escape(&opts.title)
        );
    }
    let mut legend_row = 0;
    for (i, (s, mapped)) in series.iter().zip(&pts).enumerate() {
        let (color, extra) = match s.style {
            LineStyle::Solid => (
                PALETTE[i % PALETTE.len()],
                String::from(r#" stroke-width="2""#),
            ),
            LineStyle::Dashed => (
                "black",
                String::from(r#" stroke-width="2" stroke-dasharray="6 4""#),
            ),
            LineStyle::Faint => (
                PALETTE[i % PALETTE.len()],
                String::from(r#" stroke-width="1" stroke-opacity="0.35""#),
            ),
        };
        let coords: Vec<String> = mapped
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}"{extra} points="{}"/>"#,
            coords.join(" ")
        );
        if s.style != LineStyle::Faint && !s.label.is_empty() {
            let y = MARGIN + 16.0 + 16.0 * legend_row as f64;
            legend_row += 1;
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{y:.2}" font-size="12" text-anchor="end" fill="{color}">{}</text>"#,
                w - MARGIN - 8.0,
                escape(&s.label)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Log-log plot of mean sup error against `n`, with the theoretical rate
/// scaled to coincide with the first empirical point.
pub fn rate_plot(result: &StudyResult, rate: Option<&RateSpec>) -> Result<String> {
    let first = result
        .rows
        .first()
        .ok_or_else(|| LiError::invalid("empty study result"))?;
    let mut series = vec![Series {
        label: "mean sup error".into(),
        points: result.rows.iter().map(|r| (r.n as f64, r.mean)).collect(),
        style: LineStyle::Solid,
    }];
    if let Some(spec) = rate {
        let c = first.mean / spec.rate(first.n.max(2))?;
        series.push(Series {
            label: format!("c·(log n / n)^{:.4}", spec.exponent()),
            points: result
                .rows
                .iter()
                .filter(|r| r.n >= 2)
                .map(|r| Ok((r.n as f64, c * spec.rate(r.n)?)))
                .collect::<Result<_>>()?,
            style: LineStyle::Dashed,
        });
    }
    let opts = PlotOptions {
        title: "sup-norm error".into(),
        x_label: "n".into(),
        y_label: "error".into(),
        log_x: true,
        log_y: true,
        ..PlotOptions::default()
    };
    render_svg(&series, &opts)
}

/// Per-repetition tracking-error trajectories (faint) and their mean (dashed)
/// against simulation time `Δ·n`.
pub fn trajectory_plot(result: &MonteCarloResult, delta: f64) -> Result<String> {
    if result.mean.is_empty() {
        return Err(LiError::invalid("empty Monte-Carlo result"));
    }
    let to_points = |v: &[f64]| -> Vec<(f64, f64)> {
        v.iter()
            .enumerate()
            .map(|(n, e)| (delta * n as f64, *e))
            .collect()
    };
    let mut series: Vec<Series> = result
        .error_trajectories()
        .iter()
        .map(|t| Series {
            label: String::new(),
            points: to_points(t),
            style: LineStyle::Faint,
        })
        .collect();
    series.push(Series {
        label: "mean tracking error".into(),
        points: to_points(&result.mean),
        style: LineStyle::Dashed,
    });
    let opts = PlotOptions {
        title: "tracking error".into(),
        x_label: "time [s]".into(),
        y_label: "|xi - x|".into(),
        ..PlotOptions::default()
    };
    render_svg(&series, &opts)
}

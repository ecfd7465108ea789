//! SVG overlay of Newton, slope-number and Hodge polygons.
//!
//! Coordinates are scaled exactly and converted to floats only when
//! written out.

use std::fmt::Write as _;

use crate::polygon::Polygon;
use crate::rational::Rational;

pub const WIDTH: i64 = 800;
pub const HEIGHT: i64 = 600;
const MARGIN: i64 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dashed,
    Dotted,
}

impl Stroke {
    fn dasharray(self) -> Option<&'static str> {
        match self {
            Stroke::Solid => None,
            Stroke::Dashed => Some("10 6"),
            Stroke::Dotted => Some("2 4"),
        }
    }
}

pub struct Series<'a> {
    pub label: &'a str,
    pub polygon: &'a Polygon,
    pub stroke: Stroke,
    pub color: &'a str,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn fmt_coord(v: &Rational) -> String {
    format!("{:.3}", v.to_f64())
}

/// Renders the series into one 800×600 SVG document, one `<polyline>` per
/// series plus a legend.
pub fn render(title: &str, series: &[Series<'_>]) -> String {
    let x_max = series
        .iter()
        .map(|s| s.polygon.length().clone())
        .max()
        .filter(|x| !x.is_zero())
        .unwrap_or_else(Rational::one);
    let y_max = series
        .iter()
        .flat_map(|s| s.polygon.points().iter().map(|p| p.y.clone()))
        .max()
        .filter(|y| !y.is_zero() && !y.is_negative())
        .unwrap_or_else(Rational::one);

    let plot_w = Rational::from_integer(WIDTH - 2 * MARGIN);
    let plot_h = Rational::from_integer(HEIGHT - 2 * MARGIN);
    let left = Rational::from_integer(MARGIN);
    let bottom = Rational::from_integer(HEIGHT - MARGIN);
    let sx = &plot_w / &x_max;
    let sy = &plot_h / &y_max;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{MARGIN}" y1="{b}" x2="{r}" y2="{b}" stroke="gray"/>"#,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{MARGIN}" y1="{b}" x2="{MARGIN}" y2="{MARGIN}" stroke="gray"/>"#,
        b = HEIGHT - MARGIN
    );
    let _ = writeln!(
        out,
        r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">({}, {})</text>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 20,
        x_max,
        y_max
    );

    for s in series {
        let points: Vec<String> = s
            .polygon
            .points()
            .iter()
            .map(|p| {
                let x = &left + &(&p.x * &sx);
                let y = &bottom - &(&p.y * &sy);
                format!("{},{}", fmt_coord(&x), fmt_coord(&y))
            })
            .collect();
        let dash = s
            .stroke
            .dasharray()
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            r#"  <polyline points="{}" fill="none" stroke="{}" stroke-width="2"{dash}><title>{}</title></polyline>"#,
            points.join(" "),
            s.color,
            escape(s.label)
        );
    }

    let _ = writeln!(out, r#"  <g font-family="sans-serif" font-size="12">"#);
    for (k, s) in series.iter().enumerate() {
        let y = MARGIN + 10 + 20 * k as i64;
        let dash = s
            .stroke
            .dasharray()
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            r#"    <line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="{c}" stroke-width="2"{dash}/>"#,
            x1 = MARGIN + 10,
            x2 = MARGIN + 50,
            c = s.color
        );
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}">{}</text>"#,
            MARGIN + 58,
            y + 4,
            escape(s.label)
        );
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "</svg>");
    out
}

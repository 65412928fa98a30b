//! Minimal self-contained SVG plots.
//!
//! Means are drawn with a fixed line style: arithmetic solid, geometric
//! dash-dot, harmonic dotted.

use std::fmt::Write as _;

use pythagorean_core::ellipse::{EllipseFit, Point};
use pythagorean_core::geometry::CircleConstruction;
use pythagorean_core::MeanKind;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;

pub fn dash_pattern(kind: MeanKind) -> &'static str {
    match kind {
        MeanKind::Arithmetic => "none",
        MeanKind::Geometric => "9,4,2,4",
        MeanKind::Harmonic => "2,4",
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub struct Series {
    pub label: String,
    pub kind: MeanKind,
    pub points: Vec<(f64, f64)>,
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn around<'a>(pts: impl Iterator<Item = &'a (f64, f64)>) -> Frame {
        let mut f = Frame {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
        };
        for &(x, y) in pts.filter(|(x, y)| x.is_finite() && y.is_finite()) {
            f.x0 = f.x0.min(x);
            f.x1 = f.x1.max(x);
            f.y0 = f.y0.min(y);
            f.y1 = f.y1.max(y);
        }
        if !f.x0.is_finite() {
            return Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 };
        }
        if f.x1 == f.x0 {
            f.x1 = f.x0 + 1.0;
        }
        if f.y1 == f.y0 {
            f.y1 = f.y0 + 1.0;
        }
        f
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn open(s: &mut String, title: &str) {
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
}

fn axes(s: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(s, r#"<path d="M{l},{t} L{l},{b} L{r},{b}" fill="none" stroke="black"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{l}" y="{}" font-family="sans-serif" font-size="11">{:.3}</text>"#,
        b + 16.0,
        f.x0
    );
    let _ = writeln!(
        s,
        r#"<text x="{r}" y="{}" text-anchor="end" font-family="sans-serif" font-size="11">{:.3}</text>"#,
        b + 16.0,
        f.x1
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{b}" text-anchor="end" font-family="sans-serif" font-size="11">{:.3}</text>"#,
        l - 4.0,
        f.y0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="11">{:.3}</text>"#,
        l - 4.0,
        t + 4.0,
        f.y1
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    );
}

fn polyline(s: &mut String, f: &Frame, pts: &[(f64, f64)], kind: MeanKind) {
    let coords: Vec<String> = pts
        .iter()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|&(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="{}"/>"#,
        coords.join(" "),
        dash_pattern(kind)
    );
}

fn legend(s: &mut String, entries: &[(String, MeanKind)]) {
    for (i, (label, kind)) in entries.iter().enumerate() {
        let y = MARGIN + 14.0 + 18.0 * i as f64;
        let x = WIDTH - MARGIN - 150.0;
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="black" stroke-width="1.5" stroke-dasharray="{}"/>"#,
            x + 36.0,
            dash_pattern(*kind)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            x + 44.0,
            y + 4.0,
            escape(label)
        );
    }
}

pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let frame = Frame::around(series.iter().flat_map(|s| s.points.iter()));
    let mut s = String::new();
    open(&mut s, title);
    axes(&mut s, &frame, x_label, y_label);
    for line in series {
        polyline(&mut s, &frame, &line.points, line.kind);
    }
    legend(&mut s, &series.iter().map(|l| (l.label.clone(), l.kind)).collect::<Vec<_>>());
    s.push_str("</svg>\n");
    s
}

/// Point cloud with one boundary curve per fit.
pub fn ellipse_plot(points: &[Point], fits: &[EllipseFit]) -> String {
    let all: Vec<(f64, f64)> = points
        .iter()
        .chain(fits.iter().flat_map(|f| f.boundary.iter()))
        .map(|p| (p[0], p[1]))
        .collect();
    let frame = Frame::around(all.iter());
    let mut s = String::new();
    open(&mut s, "Per-mean ellipses");
    axes(&mut s, &frame, "x", "y");
    for p in points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="gray"/>"#,
            frame.px(p[0]),
            frame.py(p[1])
        );
    }
    for fit in fits {
        let pts: Vec<(f64, f64)> = fit.boundary.iter().map(|p| (p[0], p[1])).collect();
        polyline(&mut s, &frame, &pts, fit.mean_kind);
        let c = fit.center_original;
        let _ = writeln!(
            s,
            r#"<path d="M{x1:.2},{y:.2} L{x2:.2},{y:.2} M{x:.2},{y1:.2} L{x:.2},{y2:.2}" stroke="black"/>"#,
            x = frame.px(c[0]),
            y = frame.py(c[1]),
            x1 = frame.px(c[0]) - 5.0,
            x2 = frame.px(c[0]) + 5.0,
            y1 = frame.py(c[1]) - 5.0,
            y2 = frame.py(c[1]) + 5.0
        );
    }
    legend(
        &mut s,
        &fits.iter().map(|f| (f.mean_kind.name().to_string(), f.mean_kind)).collect::<Vec<_>>(),
    );
    s.push_str("</svg>\n");
    s
}

/// Semicircle on the diameter `x1 + x2` with the three mean segments.
pub fn circle_plot(c: &CircleConstruction) -> String {
    let p = c.points();
    let r = c.radius_oh;
    let scale = (WIDTH - 2.0 * MARGIN) / (2.0 * r);
    let base = HEIGHT - MARGIN - 40.0;
    let tx = |q: [f64; 2]| (MARGIN + q[0] * scale, base - q[1] * scale);
    let mut s = String::new();
    open(&mut s, &format!("Means of {} and {}", c.x1, c.x2));
    let (bx, by) = tx(p.b);
    let (cx, cy) = tx(p.c);
    let _ = writeln!(
        s,
        r#"<path d="M{bx:.2},{by:.2} A{rr:.2},{rr:.2} 0 0 1 {cx:.2},{cy:.2} Z" fill="none" stroke="black"/>"#,
        rr = r * scale
    );
    let seg = |s: &mut String, a: [f64; 2], b: [f64; 2], kind: MeanKind| {
        let (x1, y1) = tx(a);
        let (x2, y2) = tx(b);
        let _ = writeln!(
            s,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="2" stroke-dasharray="{}"/>"#,
            dash_pattern(kind)
        );
    };
    seg(&mut s, p.o, p.h, MeanKind::Arithmetic);
    seg(&mut s, p.h, p.g, MeanKind::Geometric);
    seg(&mut s, p.g, p.d, MeanKind::Harmonic);
    seg(&mut s, p.h, p.d, MeanKind::Harmonic);
    for (name, q) in [("B", p.b), ("G", p.g), ("C", p.c), ("O", p.o), ("H", p.h), ("D", p.d)] {
        let (x, y) = tx(q);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13">{name}</text>"#,
            x + 4.0,
            y + 16.0
        );
    }
    legend(
        &mut s,
        &[
            (format!("OH = AM = {:.3}", c.radius_oh), MeanKind::Arithmetic),
            (format!("HG = GM = {:.3}", c.chord_hg), MeanKind::Geometric),
            (format!("HD = HM = {:.3}", c.segment_hd), MeanKind::Harmonic),
        ],
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use pythagorean_core::geometry::circle_construction;

    #[test]
    fn charts_are_well_formed() {
        let chart = line_chart(
            "a < b & c",
            "x",
            "y",
            &[Series {
                label: "AM".into(),
                kind: MeanKind::Arithmetic,
                points: vec![(0.0, 1.0), (1.0, 2.0)],
            }],
        );
        assert!(chart.starts_with("<svg"));
        assert!(chart.trim_end().ends_with("</svg>"));
        assert!(chart.contains("a &lt; b &amp; c"));
        let circle = circle_plot(&circle_construction(1.0, 4.0).unwrap());
        assert!(circle.contains("HG = GM = 2.000"));
    }
}

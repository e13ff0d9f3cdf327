//! CSV tables and SVG figures. Everything here is a pure function of its
//! inputs, so equal configurations give byte-identical files.

use std::f64::consts::PI;
use std::fmt::Write as _;

use fnr_core::closedform::{sextic_curve_point, switching_angles, switching_points};
use fnr_core::{BoundaryPoint, SupportLine};

use crate::config::Colors;

/// 17 significant digits: enough to round-trip any f64.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_bytes(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn support_lines_csv(lines: &[SupportLine]) -> Vec<u8> {
    csv_bytes(
        &["theta", "offset"],
        lines.iter().map(|l| vec![float(l.theta), float(l.offset)]),
    )
}

pub fn boundary_csv(points: &[BoundaryPoint]) -> Vec<u8> {
    csv_bytes(
        &["theta", "x", "y", "branch"],
        points
            .iter()
            .map(|p| vec![float(p.theta), float(p.x), float(p.y), p.branch.token().to_owned()]),
    )
}

/// `count` directions θ_k = π(2k − count)/count in [−π, π); θ = 0 is hit
/// exactly whenever `count` is even.
pub fn line_angles(count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| PI * (2.0 * k as f64 - count as f64) / count as f64)
        .collect()
}

/// Square drawing area [−half, half]² mapped to a `SIZE`-pixel canvas.
struct Canvas {
    half: f64,
    out: String,
}

const SIZE: f64 = 640.0;

impl Canvas {
    fn new(half: f64, title: &str) -> Self {
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
            s = SIZE
        );
        let _ = writeln!(out, "<title>{title}</title>");
        let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        Self { half, out }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let scale = SIZE / (2.0 * self.half);
        ((x + self.half) * scale, (self.half - y) * scale)
    }

    fn inside(&self, x: f64, y: f64) -> bool {
        x.abs() <= self.half && y.abs() <= self.half
    }

    fn open_group(&mut self, id: &str, attrs: &str) {
        let _ = writeln!(self.out, r#"<g id="{id}" {attrs}>"#);
    }

    fn close_group(&mut self) {
        self.out.push_str("</g>\n");
    }

    fn line(&mut self, class: &str, a: (f64, f64), b: (f64, f64)) {
        let (x1, y1) = self.px(a.0, a.1);
        let (x2, y2) = self.px(b.0, b.1);
        let _ = writeln!(
            self.out,
            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }

    fn polyline(&mut self, class: &str, pts: &[(f64, f64)], closed: bool) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            let (u, v) = self.px(x, y);
            let _ = write!(d, "{}{u:.3},{v:.3}", if i == 0 { "M" } else { " L" });
        }
        if closed {
            d.push_str(" Z");
        }
        let _ = writeln!(self.out, r#"<path class="{class}" d="{d}"/>"#);
    }

    fn circle(&mut self, class: &str, c: (f64, f64), radius: f64) {
        let (cx, cy) = self.px(c.0, c.1);
        let rr = radius * SIZE / (2.0 * self.half);
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{cx:.3}" cy="{cy:.3}" r="{rr:.3}"/>"#
        );
    }

    fn marker(&mut self, class: &str, c: (f64, f64)) {
        let (cx, cy) = self.px(c.0, c.1);
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{cx:.3}" cy="{cy:.3}" r="4"/>"#
        );
    }

    fn axes(&mut self, color: &str) {
        self.open_group("axes", &format!(r#"stroke="{color}" stroke-width="0.5""#));
        let h = self.half;
        self.line("axis", (-h, 0.0), (h, 0.0));
        self.line("axis", (0.0, -h), (0.0, h));
        self.close_group();
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

/// The segment of the line x·cosθ + y·sinθ = p inside [−half, half]², by
/// clipping its parametrisation p·(cosθ, sinθ) + t·(−sinθ, cosθ).
pub fn clip_line(theta: f64, p: f64, half: f64) -> Option<((f64, f64), (f64, f64))> {
    let (s, c) = theta.sin_cos();
    let (x0, y0) = (p * c, p * s);
    let (dx, dy) = (-s, c);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (start, dir) in [(x0, dx), (y0, dy)] {
        if dir.abs() < 1e-15 {
            if start.abs() > half {
                return None;
            }
            continue;
        }
        let t1 = (-half - start) / dir;
        let t2 = (half - start) / dir;
        lo = lo.max(t1.min(t2));
        hi = hi.min(t1.max(t2));
    }
    (lo < hi).then(|| ((x0 + lo * dx, y0 + lo * dy), (x0 + hi * dx, y0 + hi * dy)))
}

/// Half-width of the plotting box: 1 + r + 0.5.
pub fn plot_half_width(r: f64) -> f64 {
    1.0 + r + 0.5
}

pub fn support_lines_svg(r: f64, lines: &[SupportLine], colors: &Colors) -> String {
    let half = plot_half_width(r);
    let mut c = Canvas::new(half, &format!("Supporting lines of W(F_aI), r = {r}"));
    c.axes(&colors.aux);
    c.open_group(
        "support-lines",
        &format!(r#"stroke="{}" stroke-width="0.6" fill="none""#, colors.boundary),
    );
    for l in lines {
        if let Some((a, b)) = clip_line(l.theta, l.offset, half) {
            c.line("support-line", a, b);
        }
    }
    c.close_group();
    c.finish()
}

/// Splits a sampled curve into runs that stay inside the box.
fn visible_runs(c: &Canvas, pts: impl Iterator<Item = (f64, f64)>) -> Vec<Vec<(f64, f64)>> {
    let mut runs = vec![Vec::new()];
    for (x, y) in pts {
        if x.is_finite() && y.is_finite() && c.inside(x, y) {
            runs.last_mut().unwrap().push((x, y));
        } else if !runs.last().unwrap().is_empty() {
            runs.push(Vec::new());
        }
    }
    runs.retain(|r| r.len() > 1);
    runs
}

/// Number of parameter samples for each half of the dashed sextic.
const SEXTIC_SAMPLES: usize = 4000;

/// Boundary with the auxiliary geometry: the two circles of radius r about
/// ±1, the full sextic arc, the switching supporting lines and the four
/// switching points.
pub fn boundary_svg(r: f64, points: &[BoundaryPoint], colors: &Colors) -> fnr_core::Result<String> {
    let half = plot_half_width(r);
    let mut c = Canvas::new(half, &format!("Boundary of W(F_aI), r = {r}"));
    c.axes(&colors.aux);

    let dashed = format!(
        r#"stroke="{}" stroke-width="1" stroke-dasharray="6 4" fill="none""#,
        colors.aux
    );
    c.open_group("circles", &dashed);
    c.circle("aux-circle", (1.0, 0.0), r);
    c.circle("aux-circle", (-1.0, 0.0), r);
    c.close_group();

    c.open_group("sextic", &dashed);
    for sign in [1.0, -1.0] {
        let pts: Vec<(f64, f64)> = (1..SEXTIC_SAMPLES)
            .map(|k| sign * PI * k as f64 / SEXTIC_SAMPLES as f64)
            .map(|t| sextic_curve_point(t, r))
            .collect::<fnr_core::Result<_>>()?;
        for run in visible_runs(&c, pts.into_iter()) {
            c.polyline("aux-sextic", &run, false);
        }
    }
    c.close_group();

    c.open_group("switching-lines", &dashed);
    for t in switching_angles(r) {
        if let Some((a, b)) = clip_line(t, fnr_core::lambda_max(t, r), half) {
            c.line("switching-line", a, b);
        }
    }
    c.close_group();

    c.open_group(
        "boundary",
        &format!(r#"stroke="{}" stroke-width="2" fill="none""#, colors.boundary),
    );
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.x, p.y)).collect();
    c.polyline("boundary", &xy, true);
    c.close_group();

    c.open_group("switching-points", &format!(r#"fill="{}" stroke="none""#, colors.marker));
    for p in switching_points(r)? {
        c.marker("switching-point", (p.x, p.y));
    }
    c.close_group();
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trips() {
        for v in [1.5, 0.1, -2.0 / 3.0, 1e-300, f64::MAX, 0.0] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(float(1.5), "1.5000000000000000e0");
    }

    #[test]
    fn angles_hit_zero() {
        let a = line_angles(180);
        assert_eq!(a[90], 0.0);
        assert_eq!(a[0], -PI);
    }

    #[test]
    fn clipping() {
        let (a, b) = clip_line(0.0, 1.0, 2.0).unwrap();
        assert_eq!((a, b), ((1.0, -2.0), (1.0, 2.0)));
        assert!(clip_line(0.0, 3.0, 2.0).is_none());
        let (a, b) = clip_line(PI / 4.0, 0.0, 1.0).unwrap();
        assert!((a.0 + a.1).abs() < 1e-12 && (b.0 + b.1).abs() < 1e-12);
    }
}

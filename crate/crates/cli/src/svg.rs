//! Static SVG figures of planar results.
//!
//! Coordinates are converted to floating point only for drawing; labels show
//! the exact values.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use tropelim::fan::TropicalCycle;

use crate::schema::cone_rays;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 40.0;

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Maps the bounding box of `pts` onto the canvas with the y axis pointing up.
struct Frame {
    min: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(pts: &[(f64, f64)]) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0).max(1.0);
        Frame {
            min: (x0, y0),
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.min.0) * self.scale,
            SIZE - MARGIN - (y - self.min.1) * self.scale,
        )
    }
}

/// A filled polygon with each vertex labelled by its exact coordinates.
pub fn polygon(vertices: &[Vec<BigRational>]) -> String {
    let pts: Vec<(f64, f64)> = vertices.iter().map(|v| (f(&v[0]), f(&v[1]))).collect();
    // order around the centroid for drawing
    let n = pts.len() as f64;
    let c = (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        let ta = (pts[a].1 - c.1).atan2(pts[a].0 - c.0);
        let tb = (pts[b].1 - c.1).atan2(pts[b].0 - c.0);
        ta.total_cmp(&tb)
    });
    let frame = Frame::fit(&pts);
    let mut out = String::new();
    header(&mut out);
    let path: Vec<String> = order
        .iter()
        .map(|&i| {
            let (x, y) = frame.map(pts[i]);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#9ecae1" stroke="#08519c" stroke-width="2"/>"##,
        path.join(" ")
    );
    for &i in &order {
        let (x, y) = frame.map(pts[i]);
        let label: Vec<String> = vertices[i].iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="monospace">({})</text>"#,
            x + 5.0,
            y - 5.0,
            label.join(",")
        );
    }
    out.push_str("</svg>\n");
    out
}

/// A planar fan: every generator drawn from the origin, labelled with the
/// direction and the multiplicity of its cone.
pub fn planar_fan(t: &TropicalCycle) -> String {
    let mut out = String::new();
    header(&mut out);
    let centre = SIZE / 2.0;
    let reach = centre - MARGIN;
    let _ = writeln!(out, r#"<circle cx="{centre:.2}" cy="{centre:.2}" r="3" fill="black"/>"#);
    for (cone, m) in t.cones() {
        for r in cone_rays(cone) {
            let (x, y) = (r[0].to_f64().unwrap_or(0.0), r[1].to_f64().unwrap_or(0.0));
            let len = (x * x + y * y).sqrt().max(f64::MIN_POSITIVE);
            let (ex, ey) = (centre + reach * x / len, centre - reach * y / len);
            let _ = writeln!(
                out,
                r##"<line x1="{centre:.2}" y1="{centre:.2}" x2="{ex:.2}" y2="{ey:.2}" stroke="#08519c" stroke-width="2"/>"##
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="monospace">({},{}) m={}</text>"#,
                centre + (reach - 10.0) * x / len,
                centre - (reach - 10.0) * y / len - 6.0,
                r[0],
                r[1],
                m
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

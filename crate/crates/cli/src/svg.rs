//! Static SVG 1.1 figures: the container outline, each subcontainer as a
//! light gray rounded triangle and each circle in dark gray.

use std::fmt::Write;

use splitpack::geometry::{Hat, Point, Triangle};

use crate::docs::PackingDocument;
use crate::error::CliResult;

const MARGIN: f64 = 0.02;

pub fn render(doc: &PackingDocument) -> CliResult<String> {
    let container = doc.container.to_container()?;
    let outline = container.polygon();
    let (mut lo, mut hi) = (outline[0], outline[0]);
    for p in &outline {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let size = (hi.x - lo.x).max(hi.y - lo.y);
    let pad = MARGIN * size;
    let stroke = 0.002 * size;
    let (x0, y0) = (lo.x - pad, lo.y - pad);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="{:.0}" viewBox="{x0} {y0} {w} {h}">"#,
        800.0 * h / w
    );
    // flip y so that the figure uses the packing's coordinates
    let _ = writeln!(
        out,
        r#"<g transform="translate(0,{}) scale(1,-1)">"#,
        2.0 * y0 + h
    );
    let points: Vec<String> = outline.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="white" stroke="black" stroke-width="{stroke}"/>"#,
        points.join(" ")
    );
    for s in &doc.subcontainers {
        let p = |i: usize| Point::new(s.vertices[i][0], s.vertices[i][1]);
        let hat = Hat::with_radius(Triangle::new(p(0), p(1), p(2))?, s.rounding_radius)?;
        let _ = writeln!(
            out,
            r##"<path d="{}" fill="#d9d9d9" fill-opacity="0.5" stroke="#808080" stroke-width="{stroke}"/>"##,
            hat_path(&hat)
        );
    }
    for c in &doc.placements {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#404040"/>"##,
            c.x, c.y, c.radius
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// Rounded triangle outline: straight runs along the offset edges joined
/// by arcs of the rounding radius around the core corners.
fn hat_path(hat: &Hat) -> String {
    let v = hat.triangle().vertices();
    let core = hat.core();
    let s = hat.rounding_radius();
    let normal = |i: usize| {
        let d = v[(i + 1) % 3] - v[i];
        Point::new(d.y, -d.x) * (1.0 / d.norm())
    };
    if s == 0.0 {
        return format!(
            "M {} {} L {} {} L {} {} Z",
            v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y
        );
    }
    let mut d = String::new();
    for (i, &corner) in core.iter().enumerate() {
        let start = corner + normal((i + 2) % 3) * s;
        let end = corner + normal(i) * s;
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(
            d,
            "{cmd} {} {} A {s} {s} 0 0 1 {} {} ",
            start.x, start.y, end.x, end.y
        );
    }
    d.push('Z');
    d
}

#![allow(dead_code)]

use splitpack::geometry::{Point, Triangle};

/// Non-acute triangle on the base `(0,0)–(1,0)` scaled by `scale`. The
/// apex sits at horizontal position `u ∈ (0,1)` and at a fraction
/// `v ∈ (0,1]` of the height allowed by the circle over the base, so the
/// apex angle is at least a right angle.
pub fn non_acute(u: f64, v: f64, scale: f64) -> Triangle {
    let y = v * (u * (1.0 - u)).sqrt();
    Triangle::new(
        Point::new(0.0, 0.0),
        Point::new(scale, 0.0),
        Point::new(u * scale, y * scale),
    )
    .unwrap()
}

/// Splits `total` into `weights.len()` parts proportional to `weights`.
pub fn areas_from_weights(weights: &[f64], total: f64) -> Vec<f64> {
    let sum: f64 = weights.iter().sum();
    weights.iter().map(|w| w / sum * total).collect()
}

/// Distance between segments `pq` and `rs` by brute force: zero if they
/// cross, else the smallest endpoint-to-segment distance.
pub fn segment_distance(p: Point, q: Point, r: Point, s: Point) -> f64 {
    let orient = |a: Point, b: Point, c: Point| (b - a).cross(c - a);
    let (d1, d2) = (orient(p, q, r), orient(p, q, s));
    let (d3, d4) = (orient(r, s, p), orient(r, s, q));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return 0.0;
    }
    let ps = |x: Point, a: Point, b: Point| {
        let ab = b - a;
        let t = ((x - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
        x.distance(a + ab * t)
    };
    ps(p, r, s)
        .min(ps(q, r, s))
        .min(ps(r, p, q))
        .min(ps(s, p, q))
}

//! Closed-form constructions for squares, non-acute triangles and hats.
//!
//! A *hat* is a triangle whose three corners are rounded to a common radius
//! `s`. Equivalently it is the triangle shrunk inward by `s` (homothetic to
//! the original about its incenter) and then dilated by a disk of radius
//! `s`, so it is the convex hull of three *corner disks*. Hats are described
//! by the area `a` of the triangle's incircle and the area `b = π s²` of
//! the rounding circle, with `0 ≤ b ≤ a`.
//!
//! All lengths are `f64` world coordinates; triangles are stored
//! counterclockwise.

use std::f64::consts::{PI, SQRT_2};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Fraction of a square's area that is always packable: `π / (3 + 2√2)`.
pub const SQUARE_DENSITY: f64 = PI / (3.0 + 2.0 * SQRT_2);

/// A triangle counts as non-acute when its largest angle is at least
/// `π/2 - NON_ACUTE_SLACK`.
pub const NON_ACUTE_SLACK: f64 = 1e-9;

/// Relative slack accepted when a rounding area exceeds the incircle area
/// only through floating-point noise.
const ROUNDING_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Image of `self` under the homothety with the given center and ratio.
    #[inline]
    pub fn scaled_about(self, center: Point, ratio: f64) -> Point {
        center + (self - center) * ratio
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Radius of the circle with the given area.
#[inline]
pub fn radius_for_area(area: f64) -> f64 {
    (area / PI).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "circle needs a finite center and positive radius, got radius {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn from_area(center: Point, area: f64) -> Result<Self> {
        Self::new(center, radius_for_area(area))
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }
}

/// A triangle placed so that its longest side is the base, traversed from
/// `left` to `right` with `apex` on the left-hand (counterclockwise) side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub left: Point,
    pub right: Point,
    pub apex: Point,
}

impl Frame {
    pub fn base_length(&self) -> f64 {
        self.left.distance(self.right)
    }

    /// Orthogonal projection of the apex onto the base line. For non-acute
    /// triangles it lies strictly between `left` and `right`.
    pub fn altitude_foot(&self) -> Point {
        let base = self.right - self.left;
        let t = (self.apex - self.left).dot(base) / base.dot(base);
        self.left + base * t
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    vertices: [Point; 3],
}

impl Triangle {
    /// Builds a triangle from three vertices in any order; they are stored
    /// counterclockwise.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParameter(
                "triangle vertices must be finite".into(),
            ));
        }
        let doubled = (b - a).cross(c - a);
        let longest = a.distance(b).max(b.distance(c)).max(c.distance(a));
        if !(doubled.abs() > f64::EPSILON * longest * longest) {
            return Err(Error::InvalidParameter("degenerate triangle".into()));
        }
        let vertices = if doubled > 0.0 { [a, b, c] } else { [a, c, b] };
        Ok(Self { vertices })
    }

    /// Places the triangle with side lengths `x`, `y`, `z` in the canonical
    /// frame: the longest side lies on the x-axis starting at the origin,
    /// the apex is above it. Of the two remaining sides, the one listed
    /// first becomes the left leg.
    pub fn from_sides(x: f64, y: f64, z: f64) -> Result<Self> {
        let sides = [x, y, z];
        if sides.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "side lengths must be positive, got ({x}, {y}, {z})"
            )));
        }
        let base_idx = (0..3).fold(0, |best, i| if sides[i] > sides[best] { i } else { best });
        let base = sides[base_idx];
        let mut legs = (0..3).filter(|&i| i != base_idx).map(|i| sides[i]);
        let (left_leg, right_leg) = (legs.next().unwrap(), legs.next().unwrap());
        if left_leg + right_leg <= base {
            return Err(Error::InvalidParameter(format!(
                "side lengths ({x}, {y}, {z}) violate the triangle inequality"
            )));
        }
        let apex_x = (left_leg * left_leg - right_leg * right_leg + base * base) / (2.0 * base);
        let apex_y = (left_leg * left_leg - apex_x * apex_x).max(0.0).sqrt();
        Self::new(
            Point::new(0.0, 0.0),
            Point::new(base, 0.0),
            Point::new(apex_x, apex_y),
        )
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    /// Side `i` is the side opposite vertex `i`.
    pub fn side_lengths(&self) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        [b.distance(c), c.distance(a), a.distance(b)]
    }

    pub fn area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * (b - a).cross(c - a)
    }

    pub fn perimeter(&self) -> f64 {
        self.side_lengths().iter().sum()
    }

    /// Longest side, which is also the diameter of the triangle.
    pub fn diameter(&self) -> f64 {
        self.side_lengths().into_iter().fold(0.0, f64::max)
    }

    /// Interior angle at each vertex.
    pub fn angles(&self) -> [f64; 3] {
        let s = self.side_lengths();
        std::array::from_fn(|i| {
            let (opp, u, v) = (s[i], s[(i + 1) % 3], s[(i + 2) % 3]);
            ((u * u + v * v - opp * opp) / (2.0 * u * v))
                .clamp(-1.0, 1.0)
                .acos()
        })
    }

    /// The largest interior angle, opposite the longest side.
    pub fn apex_angle(&self) -> f64 {
        self.angles().into_iter().fold(0.0, f64::max)
    }

    pub fn is_non_acute(&self) -> bool {
        self.apex_angle() >= PI / 2.0 - NON_ACUTE_SLACK
    }

    pub fn frame(&self) -> Frame {
        let s = self.side_lengths();
        let apex = (0..3).fold(0, |best, i| if s[i] > s[best] { i } else { best });
        Frame {
            left: self.vertices[(apex + 1) % 3],
            right: self.vertices[(apex + 2) % 3],
            apex: self.vertices[apex],
        }
    }

    pub fn incenter(&self) -> Point {
        let s = self.side_lengths();
        let p = s[0] + s[1] + s[2];
        let [a, b, c] = self.vertices;
        Point::new(
            (s[0] * a.x + s[1] * b.x + s[2] * c.x) / p,
            (s[0] * a.y + s[1] * b.y + s[2] * c.y) / p,
        )
    }

    pub fn inradius(&self) -> f64 {
        2.0 * self.area() / self.perimeter()
    }

    pub fn incircle(&self) -> Circle {
        Circle {
            center: self.incenter(),
            radius: self.inradius(),
        }
    }

    pub fn incircle_area(&self) -> f64 {
        let r = self.inradius();
        PI * r * r
    }

    pub fn scaled_about(&self, center: Point, ratio: f64) -> Result<Triangle> {
        let [a, b, c] = self.vertices;
        Triangle::new(
            a.scaled_about(center, ratio),
            b.scaled_about(center, ratio),
            c.scaled_about(center, ratio),
        )
    }

    pub fn translated(&self, offset: Point) -> Triangle {
        Triangle {
            vertices: self.vertices.map(|v| v + offset),
        }
    }

    /// The triangle shrunk inward by `distance` along all three sides,
    /// which is its image under the homothety about the incenter with ratio
    /// `(R - distance) / R`. Collapses to the incenter at `distance = R`.
    pub fn inward_offset(&self, distance: f64) -> [Point; 3] {
        let center = self.incenter();
        let ratio = ((self.inradius() - distance) / self.inradius()).max(0.0);
        self.vertices.map(|v| v.scaled_about(center, ratio))
    }
}

/// The incircle of a triangle: radius `Δ / s` with `s` the semiperimeter.
pub fn triangle_incircle(t: &Triangle) -> Circle {
    t.incircle()
}

/// A non-acute triangle with all corners rounded to `rounding_radius`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hat {
    triangle: Triangle,
    rounding_radius: f64,
}

impl Hat {
    pub fn unrounded(triangle: Triangle) -> Self {
        Self {
            triangle,
            rounding_radius: 0.0,
        }
    }

    /// Hat with rounding area `b`; `b` may not exceed the incircle area.
    pub fn new(triangle: Triangle, rounding_area: f64) -> Result<Self> {
        if !(rounding_area >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "rounding area must be nonnegative, got {rounding_area}"
            )));
        }
        Self::with_radius(triangle, radius_for_area(rounding_area))
    }

    pub fn with_radius(triangle: Triangle, rounding_radius: f64) -> Result<Self> {
        let inradius = triangle.inradius();
        if !(rounding_radius >= 0.0) || rounding_radius > inradius * (1.0 + ROUNDING_SLACK) {
            return Err(Error::InvalidParameter(format!(
                "rounding radius {rounding_radius} outside [0, {inradius}]"
            )));
        }
        Ok(Self {
            triangle,
            rounding_radius: rounding_radius.min(inradius),
        })
    }

    pub fn triangle(&self) -> &Triangle {
        &self.triangle
    }

    pub fn rounding_radius(&self) -> f64 {
        self.rounding_radius
    }

    pub fn rounding_area(&self) -> f64 {
        PI * self.rounding_radius * self.rounding_radius
    }

    pub fn incircle_area(&self) -> f64 {
        self.triangle.incircle_area()
    }

    /// Centers of the three corner disks. The hat is the convex hull of the
    /// disks of radius [`Hat::rounding_radius`] around these points.
    pub fn core(&self) -> [Point; 3] {
        self.triangle.inward_offset(self.rounding_radius)
    }

    /// Counterclockwise polygonization of the hat boundary with
    /// `segments_per_arc` segments on each rounded corner.
    pub fn boundary(&self, segments_per_arc: usize) -> Vec<Point> {
        let s = self.rounding_radius;
        let verts = self.triangle.vertices();
        if s == 0.0 {
            return verts.to_vec();
        }
        let core = self.core();
        let segs = segments_per_arc.max(1);
        let outward = |from: Point, to: Point| {
            let d = to - from;
            (-d.x).atan2(d.y)
        };
        let mut out = Vec::with_capacity(3 * (segs + 1));
        for i in 0..3 {
            let prev = verts[(i + 2) % 3];
            let cur = verts[i];
            let next = verts[(i + 1) % 3];
            let start = outward(prev, cur);
            let mut end = outward(cur, next);
            while end < start {
                end += 2.0 * PI;
            }
            for k in 0..=segs {
                let theta = start + (end - start) * k as f64 / segs as f64;
                out.push(core[i] + Point::new(theta.cos(), theta.sin()) * s);
            }
        }
        out
    }
}

/// Closed-form measures of a right isosceles `(a, b)`-hat.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HatDimensions {
    /// Height of the unrounded triangle over its hypotenuse.
    pub h: f64,
    /// Width along the hypotenuse after rounding.
    pub w: f64,
    /// Extent along a leg after rounding.
    pub d: f64,
    /// Width when one base corner stays sharp.
    pub w_corner: f64,
    /// Leg extent of the unrounded hat, `d(a, 0)`.
    pub d_corner: f64,
}

pub fn hat_dimensions(a: f64, b: f64) -> Result<HatDimensions> {
    if !(a > 0.0 && a.is_finite()) || !(b >= 0.0) || b > a {
        return Err(Error::InvalidParameter(format!(
            "hat dimensions need 0 <= b <= a and a > 0, got a = {a}, b = {b}"
        )));
    }
    let r = radius_for_area(a);
    let s = radius_for_area(b);
    let h = r * (1.0 + SQRT_2);
    let w = r * (2.0 + 2.0 * SQRT_2) - s * 2.0 * SQRT_2;
    let d = r * (2.0 + SQRT_2) - s * SQRT_2;
    Ok(HatDimensions {
        h,
        w,
        d,
        w_corner: w + s * SQRT_2,
        d_corner: r * (2.0 + SQRT_2),
    })
}

/// The two equal circles of radius `side / (2 + √2)` in opposite corners
/// of the square `[0, side]²`.
pub fn square_twincircles(side: f64) -> Result<(Circle, Circle)> {
    if !(side > 0.0 && side.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "square side must be positive, got {side}"
        )));
    }
    let r = side / (2.0 + SQRT_2);
    Ok((
        Circle::new(Point::new(r, r), r)?,
        Circle::new(Point::new(side - r, side - r), r)?,
    ))
}

/// Target area ratio for a weighted split.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitKey {
    pub f1: f64,
    pub f2: f64,
}

impl SplitKey {
    pub fn new(f1: f64, f2: f64) -> Result<Self> {
        if !(f1 > 0.0 && f2 > 0.0 && f1.is_finite() && f2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "split key components must be positive, got ({f1}, {f2})"
            )));
        }
        Ok(Self { f1, f2 })
    }

    pub fn get(&self, i: usize) -> f64 {
        if i == 0 {
            self.f1
        } else {
            self.f2
        }
    }
}

/// Split key of a triangle: incircle areas of the two right triangles
/// obtained by cutting along the altitude from the apex.
pub fn triangle_split_key(t: &Triangle) -> SplitKey {
    let frame = t.frame();
    let foot = frame.altitude_foot();
    let height = frame.apex.distance(foot);
    let half = |corner: Point| {
        let leg = corner.distance(foot);
        let hyp = corner.distance(frame.apex);
        let r = leg * height / (leg + height + hyp);
        PI * r * r
    };
    SplitKey {
        f1: half(frame.left),
        f2: half(frame.right),
    }
}

/// The split key associated with a hat depends only on its triangle.
pub fn hat_split_key(h: &Hat) -> SplitKey {
    triangle_split_key(h.triangle())
}

/// Container shapes accepted by the packer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Container {
    /// The axis-aligned square `[0, side]²`.
    Square {
        side: f64,
    },
    Triangle(Triangle),
}

impl Container {
    pub fn area(&self) -> f64 {
        match self {
            Container::Square { side } => side * side,
            Container::Triangle(t) => t.area(),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Container::Square { side } => side * SQRT_2,
            Container::Triangle(t) => t.diameter(),
        }
    }

    /// Counterclockwise outline.
    pub fn polygon(&self) -> Vec<Point> {
        match *self {
            Container::Square { side } => vec![
                Point::new(0.0, 0.0),
                Point::new(side, 0.0),
                Point::new(side, side),
                Point::new(0.0, side),
            ],
            Container::Triangle(t) => t.vertices().to_vec(),
        }
    }

    /// Largest combined circle area that is always packable.
    pub fn critical_area(&self) -> Result<f64> {
        Ok(critical_density(self)? * self.area())
    }
}

/// Critical density of a triangle from its side lengths,
/// `π √((x+y-z)(z+x-y)(y+z-x) / (x+y+z)³)`.
pub fn triangle_density_from_sides(x: f64, y: f64, z: f64) -> f64 {
    let p = x + y + z;
    PI * ((x + y - z) * (z + x - y) * (y + z - x) / (p * p * p)).sqrt()
}

pub fn critical_density(container: &Container) -> Result<f64> {
    match container {
        Container::Square { side } => {
            if !(*side > 0.0 && side.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "square side must be positive, got {side}"
                )));
            }
            Ok(SQUARE_DENSITY)
        }
        Container::Triangle(t) => {
            if !t.is_non_acute() {
                return Err(Error::UnsupportedContainer(format!(
                    "acute triangle (largest angle {:.6} rad)",
                    t.apex_angle()
                )));
            }
            let [x, y, z] = t.side_lengths();
            Ok(triangle_density_from_sides(x, y, z))
        }
    }
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Signed distance from `p` to a convex counterclockwise polygon: the
/// distance to the nearest side when inside (positive), minus the
/// Euclidean distance to the polygon when outside. Degenerate polygons
/// (segments, points) have no interior.
pub fn polygon_signed_distance(p: Point, poly: &[Point]) -> f64 {
    let n = poly.len();
    let mut inside = n >= 3;
    let mut nearest_side = f64::INFINITY;
    let mut boundary = f64::INFINITY;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        boundary = boundary.min(point_segment_distance(p, a, b));
        let len = a.distance(b);
        if len > 0.0 {
            let inward = (b - a).cross(p - a) / len;
            nearest_side = nearest_side.min(inward);
            if inward < 0.0 {
                inside = false;
            }
        }
    }
    if inside && nearest_side.is_finite() {
        nearest_side
    } else {
        -boundary
    }
}

/// Signed distance from a point to a triangle, positive inside.
pub fn signed_distance(p: Point, t: &Triangle) -> f64 {
    polygon_signed_distance(p, &t.vertices())
}

fn projection(poly: &[Point], axis: Point) -> (f64, f64) {
    poly.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let x = v.dot(axis);
            (lo.min(x), hi.max(x))
        })
}

fn centroid(poly: &[Point]) -> Point {
    let sum = poly.iter().fold(Point::default(), |acc, &v| acc + v);
    sum * (1.0 / poly.len() as f64)
}

/// Separating-axis test over edge normals, edge directions and the
/// centroid offset. Any strictly separating axis proves disjointness.
fn separated(pa: &[Point], pb: &[Point]) -> bool {
    let mut axes = vec![centroid(pb) - centroid(pa)];
    for poly in [pa, pb] {
        for i in 0..poly.len() {
            let e = poly[(i + 1) % poly.len()] - poly[i];
            if e.dot(e) > 0.0 {
                axes.push(Point::new(-e.y, e.x));
                axes.push(e);
            }
        }
    }
    axes.into_iter().filter(|a| a.dot(*a) > 0.0).any(|axis| {
        let (lo_a, hi_a) = projection(pa, axis);
        let (lo_b, hi_b) = projection(pb, axis);
        hi_a < lo_b || hi_b < lo_a
    })
}

/// Minimum Euclidean distance between two convex polygons (0 when they
/// intersect or touch).
pub fn convex_polygon_distance(pa: &[Point], pb: &[Point]) -> f64 {
    if pa.is_empty() || pb.is_empty() || !separated(pa, pb) {
        return 0.0;
    }
    let vertex_to = |p: Point, poly: &[Point]| {
        (0..poly.len())
            .map(|i| point_segment_distance(p, poly[i], poly[(i + 1) % poly.len()]))
            .fold(f64::INFINITY, f64::min)
    };
    let a_to_b = pa.iter().map(|&p| vertex_to(p, pb));
    let b_to_a = pb.iter().map(|&p| vertex_to(p, pa));
    a_to_b.chain(b_to_a).fold(f64::INFINITY, f64::min)
}

/// Signed gap between two convex polygons: their distance when disjoint,
/// otherwise minus the penetration depth (the shortest translation that
/// separates them, found along the edge normals).
pub fn convex_polygon_signed_distance(pa: &[Point], pb: &[Point]) -> f64 {
    let gap = convex_polygon_distance(pa, pb);
    if gap > 0.0 || pa.is_empty() || pb.is_empty() {
        return gap;
    }
    let mut depth = f64::INFINITY;
    for poly in [pa, pb] {
        for i in 0..poly.len() {
            let e = poly[(i + 1) % poly.len()] - poly[i];
            let len = e.norm();
            if len == 0.0 {
                continue;
            }
            let axis = Point::new(-e.y / len, e.x / len);
            let (lo_a, hi_a) = projection(pa, axis);
            let (lo_b, hi_b) = projection(pb, axis);
            depth = depth.min((hi_a - lo_b).min(hi_b - lo_a));
        }
    }
    if depth.is_finite() {
        -depth.max(0.0)
    } else {
        0.0
    }
}

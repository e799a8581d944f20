//! Recursive split packing.
//!
//! Every region (the square, the root triangle, or a hat) has a split key.
//! The circles are split with [`weighted_split`], each group gets a right
//! triangle hat whose incircle area equals the group's combined area and
//! whose corners are rounded by the group's guaranteed minimum circle area,
//! and the two hats are placed in the region:
//!
//! - in a square, hat `i` is the half-square triangle anchored at corner
//!   `(0, 0)` or `(side, side)`, scaled about that corner;
//! - in a hat, hat `i` is the `i`-th altitude half of the hat's triangle,
//!   scaled about the base vertex it shares with the parent.
//!
//! A group with a single circle ends the recursion at the hat's incenter.
//! Placements are computed directly in world coordinates.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    hat_split_key, radius_for_area, Circle, Container, Hat, Point, SplitKey, Triangle,
    SQUARE_DENSITY,
};
use crate::splitting::{conjugated_violation, weighted_split, CircleSet, ConjugatedPair};
use crate::tree::{NodeId, Origin, PackingTree};

/// Relative slack on the capacity check. Instances sitting exactly on the
/// critical area must be accepted despite rounding.
pub const CAPACITY_SLACK: f64 = 1e-12;

/// Relative slack on conjugatedness checks inside the placement steps.
const PLACEMENT_SLACK: f64 = 1e-12;

/// Relative slack when checking that a split key belongs to its hat.
const KEY_SLACK: f64 = 1e-9;

/// Relative slack for a leaf against its hat's incircle. Incircle areas
/// are recomputed from vertices at every level, so rounding accumulates.
const INCIRCLE_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PackRequest {
    pub container: Container,
    pub circles: CircleSet,
    /// Promised lower bound on every circle area.
    pub min_size: f64,
}

impl PackRequest {
    pub fn new(container: Container, areas: &[f64]) -> Result<Self> {
        Ok(Self {
            container,
            circles: CircleSet::new(areas)?,
            min_size: 0.0,
        })
    }

    pub fn with_min_size(mut self, min_size: f64) -> Self {
        self.min_size = min_size;
        self
    }

    /// Checks the request and returns the container's critical area.
    pub fn validate(&self) -> Result<f64> {
        let critical = self.container.critical_area()?;
        if !(self.min_size >= 0.0 && self.min_size.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "minimum size must be a nonnegative number, got {}",
                self.min_size
            )));
        }
        if let Some(small) = self.circles.entries().last() {
            if small.area < self.min_size {
                return Err(Error::MinSizeViolation {
                    index: small.id,
                    area: small.area,
                    min_size: self.min_size,
                });
            }
        }
        let ratio = self.circles.combined() / critical;
        if ratio > 1.0 + CAPACITY_SLACK {
            return Err(Error::OverCapacity { ratio });
        }
        Ok(critical)
    }
}

/// Work counters of one packing run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PackStats {
    /// Number of weighted splits performed.
    pub splits: usize,
    /// Total number of circles handed to the splitter.
    pub element_moves: usize,
}

#[derive(Clone, Copy, Debug)]
enum Region {
    Square { side: f64 },
    Hat(Hat),
}

impl Region {
    fn split_key(&self) -> SplitKey {
        match *self {
            Region::Square { side } => {
                let half = 0.5 * SQUARE_DENSITY * side * side;
                SplitKey { f1: half, f2: half }
            }
            Region::Hat(h) => hat_split_key(&h),
        }
    }

    fn place(&self, key: SplitKey, pair: &ConjugatedPair) -> Result<(Option<Hat>, Option<Hat>)> {
        match self {
            Region::Square { side } => place_hats_in_square(*side, pair.first, pair.second),
            Region::Hat(h) => place_subhats_in_hat(h, key, pair.first, pair.second),
        }
    }

    fn single_circle(&self, area: f64) -> Result<Circle> {
        match self {
            Region::Square { .. } => {
                // incircle of the hat anchored at (0, 0)
                let r = radius_for_area(area);
                Circle::new(Point::new(r, r), r)
            }
            Region::Hat(h) => place_circle_in_hat(h, area),
        }
    }
}

pub fn pack(req: &PackRequest) -> Result<PackingTree> {
    pack_with_stats(req).map(|(tree, _)| tree)
}

pub fn pack_with_stats(req: &PackRequest) -> Result<(PackingTree, PackStats)> {
    req.validate()?;
    let mut tree = PackingTree::new(req.container);
    let mut stats = PackStats::default();
    if req.circles.is_empty() {
        return Ok((tree, stats));
    }
    let root = match req.container {
        Container::Square { side } => Region::Square { side },
        Container::Triangle(t) => Region::Hat(Hat::new(t, req.min_size)?),
    };

    let mut work: Vec<(NodeId, Region, CircleSet, f64)> =
        vec![(PackingTree::ROOT, root, req.circles.clone(), req.min_size)];
    while let Some((node, region, set, rounding)) = work.pop() {
        if set.len() == 1 {
            let e = set.entries()[0];
            let circle = region.single_circle(e.area)?;
            tree.add_circle(
                node,
                circle,
                Origin {
                    index: e.id,
                    area: e.area,
                },
            );
            continue;
        }
        let key = region.split_key();
        stats.splits += 1;
        stats.element_moves += set.len();
        let (c1, c2) = weighted_split(&set, key);
        let mut pair = ConjugatedPair::from_split(&c1, &c2, key, rounding);
        pair.first.1 = pair.first.1.min(pair.first.0);
        pair.second.1 = pair.second.1.min(pair.second.0);
        let (h1, h2) = region.place(key, &pair)?;
        let children = [(h1, c1, pair.first.1), (h2, c2, pair.second.1)];
        let mut pending = Vec::with_capacity(2);
        for (hat, group, b) in children {
            let hat =
                hat.ok_or_else(|| Error::InvalidParameter("split produced an empty group".into()))?;
            let id = tree.add_hat(node, hat);
            pending.push((id, Region::Hat(hat), group, b));
        }
        work.extend(pending.into_iter().rev());
    }
    Ok((tree, stats))
}

fn scaled_hat(
    half: Triangle,
    anchor: Point,
    target_area: f64,
    key_area: f64,
    b: f64,
) -> Result<Hat> {
    let triangle = half.scaled_about(anchor, (target_area / key_area).sqrt())?;
    let b = b.min(triangle.incircle_area());
    Hat::new(triangle, b)
}

/// Places two right isosceles hats with parameters `(a₁, b₁)` and
/// `(a₂, b₂)` in the square `[0, side]²`. Hat 1 has its right angle at the
/// origin, hat 2 at `(side, side)`. Each is the half-square triangle at its
/// corner scaled by `√(aᵢ / (a/2))`, with `a` the square's critical area.
/// Empty groups (`aᵢ = 0`) get no hat.
pub fn place_hats_in_square(
    side: f64,
    first: (f64, f64),
    second: (f64, f64),
) -> Result<(Option<Hat>, Option<Hat>)> {
    if !(side > 0.0 && side.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "square side must be positive, got {side}"
        )));
    }
    let a = SQUARE_DENSITY * side * side;
    let key = SplitKey {
        f1: a / 2.0,
        f2: a / 2.0,
    };
    let pair = ConjugatedPair { first, second };
    if let Some(why) = conjugated_violation(&pair, a, 0.0, key, PLACEMENT_SLACK * a, true) {
        return Err(Error::NotConjugated(why));
    }
    let origin = Point::new(0.0, 0.0);
    let far = Point::new(side, side);
    let lower = Triangle::new(origin, Point::new(side, 0.0), Point::new(0.0, side))?;
    let upper = Triangle::new(far, Point::new(0.0, side), Point::new(side, 0.0))?;
    let make = |half: Triangle, anchor: Point, (ai, bi): (f64, f64)| {
        (ai > 0.0)
            .then(|| scaled_hat(half, anchor, ai, key.f1, bi))
            .transpose()
    };
    Ok((make(lower, origin, first)?, make(upper, far, second)?))
}

/// Places two right hats in a non-acute container hat. Hat 1 is the left
/// altitude half of the container's triangle scaled about the left base
/// vertex by `√(a₁/f₁)`; hat 2 is the right half scaled about the right
/// base vertex by `√(a₂/f₂)`. Their hypotenuses lie along the container's
/// legs. `key` must be the container's split key and the parameters must
/// be conjugated with respect to the container (with `a₁ + a₂ ≤ a`).
pub fn place_subhats_in_hat(
    container: &Hat,
    key: SplitKey,
    first: (f64, f64),
    second: (f64, f64),
) -> Result<(Option<Hat>, Option<Hat>)> {
    let t = container.triangle();
    if !t.is_non_acute() {
        return Err(Error::UnsupportedContainer(format!(
            "acute hat (largest angle {:.6} rad)",
            t.apex_angle()
        )));
    }
    let own = hat_split_key(container);
    let off = |x: f64, y: f64| (x - y).abs() > KEY_SLACK * y;
    if off(key.f1, own.f1) || off(key.f2, own.f2) {
        return Err(Error::InvalidParameter(format!(
            "split key ({}, {}) does not belong to the container, expected ({}, {})",
            key.f1, key.f2, own.f1, own.f2
        )));
    }
    let a = container.incircle_area();
    let b = container.rounding_area();
    let pair = ConjugatedPair { first, second };
    if let Some(why) = conjugated_violation(&pair, a, b, key, PLACEMENT_SLACK * a, true) {
        return Err(Error::NotConjugated(why));
    }
    let frame = t.frame();
    let foot = frame.altitude_foot();
    let left_half = Triangle::new(frame.left, foot, frame.apex)?;
    let right_half = Triangle::new(frame.right, frame.apex, foot)?;
    let make = |half: Triangle, anchor: Point, (ai, bi): (f64, f64), fi: f64| {
        (ai > 0.0)
            .then(|| scaled_hat(half, anchor, ai, fi, bi))
            .transpose()
    };
    Ok((
        make(left_half, frame.left, first, key.f1)?,
        make(right_half, frame.right, second, key.f2)?,
    ))
}

/// A circle of the given area at the incenter of the hat's triangle.
pub fn place_circle_in_hat(container: &Hat, area: f64) -> Result<Circle> {
    let incircle = container.incircle_area();
    if !(area > 0.0) || area > incircle * (1.0 + INCIRCLE_SLACK) {
        return Err(Error::ExceedsIncircle { area, incircle });
    }
    Circle::from_area(container.triangle().incenter(), area)
}

/// Smallest member of a container family whose critical area equals the
/// combined area of `circles`. For a square this is the side
/// `√(Σ / φ_s)`; for a triangle it is the triangle scaled about its left
/// base vertex until its incircle area is `Σ`. The size of `family` is
/// ignored, only its shape matters.
pub fn min_container(circles: &CircleSet, family: &Container) -> Result<Container> {
    if circles.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot size a container for no circles".into(),
        ));
    }
    let total = circles.combined();
    match family {
        Container::Square { .. } => Ok(Container::Square {
            side: (total / SQUARE_DENSITY).sqrt(),
        }),
        Container::Triangle(t) => {
            crate::geometry::critical_density(family)?;
            let ratio = (total / t.incircle_area()).sqrt();
            Ok(Container::Triangle(t.scaled_about(t.frame().left, ratio)?))
        }
    }
}

/// Ratio between the area of the container [`min_container`] returns and
/// the combined circle area: the reciprocal of the critical density.
pub fn approximation_ratio(container: &Container, circles: &CircleSet) -> f64 {
    container.area() / circles.combined()
}

/// Area of a square whose side is the diameter of the largest circle;
/// a lower bound for any square packing of the set.
pub fn square_lower_bound(circles: &CircleSet) -> f64 {
    let largest = circles.entries().first().map_or(0.0, |e| e.area);
    4.0 * largest / PI
}

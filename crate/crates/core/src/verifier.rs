//! Independent validation of packing trees.
//!
//! Only primitive geometry is used here: point-to-polygon signed
//! distances, convex polygon distances and the corner centers of each hat.
//! A hat with rounding radius `s` is the set of points within `s` of its
//! core triangle, so a disk `(c, r)` lies inside it exactly when
//! `sd(c, core) + s - r ≥ 0`, and two hats are disjoint exactly when their
//! cores are at least `s₁ + s₂` apart.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    convex_polygon_signed_distance, polygon_signed_distance, radius_for_area, Circle, Hat, Point,
};
use crate::tree::{NodeId, PackingTree, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    CircleCircle,
    CircleInContainer,
    HatInParent,
    HatHatDisjoint,
    LeafMultiset,
}

/// One inequality. `slack ≥ 0` means it holds exactly; the check passes
/// when `slack ≥ -tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub kind: CheckKind,
    pub ids: Vec<NodeId>,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Smallest slack over all checks; `+∞` when there are none.
    pub worst_slack: f64,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| c.slack < -self.tolerance)
    }
}

/// `1e-9` times the container diameter.
pub fn default_tolerance(tree: &PackingTree) -> f64 {
    1e-9 * tree.container().diameter()
}

/// Checks disjointness and containment of every circle and hat.
pub fn verify(tree: &PackingTree, tolerance: f64) -> Result<VerificationReport> {
    run(tree, None, tolerance)
}

/// Like [`verify`], and also checks that the circle leaves are exactly the
/// input circles.
pub fn verify_with_input(
    tree: &PackingTree,
    areas: &[f64],
    tolerance: f64,
) -> Result<VerificationReport> {
    run(tree, Some(areas), tolerance)
}

fn run(tree: &PackingTree, input: Option<&[f64]>, tolerance: f64) -> Result<VerificationReport> {
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be nonnegative, got {tolerance}"
        )));
    }
    check_structure(tree)?;
    let outline = tree.container().polygon();
    let circles: Vec<(NodeId, Circle)> = tree.circles().map(|(id, c, _)| (id, *c)).collect();

    let mut checks = Vec::new();
    for &(id, c) in &circles {
        checks.push(Check {
            kind: CheckKind::CircleInContainer,
            ids: vec![id],
            slack: polygon_signed_distance(c.center, &outline) - c.radius,
        });
    }
    circle_pairs(&circles, tolerance, &mut checks);

    for (id, node) in tree.nodes().iter().enumerate() {
        let hat_children: Vec<(NodeId, &Hat)> = node
            .children
            .iter()
            .filter_map(|&c| match &tree.node(c).shape {
                Shape::Hat(h) => Some((c, h)),
                _ => None,
            })
            .collect();
        for &(child, hat) in &hat_children {
            let slack = hat
                .core()
                .iter()
                .map(|&p| disk_slack(p, hat.rounding_radius(), &node.shape))
                .fold(f64::INFINITY, f64::min);
            checks.push(Check {
                kind: CheckKind::HatInParent,
                ids: vec![id, child],
                slack,
            });
        }
        for (i, &(c1, h1)) in hat_children.iter().enumerate() {
            for &(c2, h2) in &hat_children[i + 1..] {
                let gap = convex_polygon_signed_distance(&h1.core(), &h2.core());
                checks.push(Check {
                    kind: CheckKind::HatHatDisjoint,
                    ids: vec![c1, c2],
                    slack: gap - h1.rounding_radius() - h2.rounding_radius(),
                });
            }
        }
    }

    if let Some(areas) = input {
        checks.push(leaf_multiset(tree, areas));
    } else {
        for (id, c, origin) in tree.circles() {
            if let Some(o) = origin {
                checks.push(Check {
                    kind: CheckKind::LeafMultiset,
                    ids: vec![id],
                    slack: -(c.radius - radius_for_area(o.area)).abs(),
                });
            }
        }
    }

    checks.sort_by(|a, b| a.kind.cmp(&b.kind).then_with(|| a.ids.cmp(&b.ids)));
    let worst_slack = checks.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min);
    Ok(VerificationReport {
        passed: checks.iter().all(|c| c.slack >= -tolerance),
        checks,
        worst_slack,
        tolerance,
    })
}

/// How far the disk `(center, radius)` sits inside `shape`.
fn disk_slack(center: Point, radius: f64, shape: &Shape) -> f64 {
    match shape {
        Shape::Square { side } => {
            let outline = [
                Point::new(0.0, 0.0),
                Point::new(*side, 0.0),
                Point::new(*side, *side),
                Point::new(0.0, *side),
            ];
            polygon_signed_distance(center, &outline) - radius
        }
        Shape::Triangle(t) => polygon_signed_distance(center, &t.vertices()) - radius,
        Shape::Hat(h) => polygon_signed_distance(center, &h.core()) + h.rounding_radius() - radius,
        Shape::Circle(c) => c.radius - center.distance(c.center) - radius,
    }
}

/// Pairs whose x-extents come within `tolerance` of each other, found with
/// a sweep over left edges. Far-apart pairs are disjoint and not listed.
fn circle_pairs(circles: &[(NodeId, Circle)], tolerance: f64, out: &mut Vec<Check>) {
    let mut order: Vec<usize> = (0..circles.len()).collect();
    let left = |i: usize| circles[i].1.center.x - circles[i].1.radius;
    order.sort_by(|&i, &j| left(i).total_cmp(&left(j)));
    for (k, &i) in order.iter().enumerate() {
        let (id_i, ci) = circles[i];
        let right = ci.center.x + ci.radius + tolerance;
        for &j in &order[k + 1..] {
            if left(j) > right {
                break;
            }
            let (id_j, cj) = circles[j];
            out.push(Check {
                kind: CheckKind::CircleCircle,
                ids: vec![id_i.min(id_j), id_i.max(id_j)],
                slack: ci.center.distance(cj.center) - ci.radius - cj.radius,
            });
        }
    }
}

/// Compares sorted leaf radii with sorted input radii.
fn leaf_multiset(tree: &PackingTree, areas: &[f64]) -> Check {
    let mut expected: Vec<f64> = areas.iter().map(|&a| radius_for_area(a)).collect();
    let mut found: Vec<f64> = tree.circles().map(|(_, c, _)| c.radius).collect();
    let slack = if expected.len() != found.len() || expected.iter().any(|r| !r.is_finite()) {
        -f64::MAX
    } else {
        expected.sort_by(f64::total_cmp);
        found.sort_by(f64::total_cmp);
        -expected
            .iter()
            .zip(&found)
            .map(|(e, f)| (e - f).abs())
            .fold(0.0, f64::max)
    };
    Check {
        kind: CheckKind::LeafMultiset,
        ids: Vec::new(),
        slack,
    }
}

fn check_structure(tree: &PackingTree) -> Result<()> {
    let malformed = |msg: String| Err(Error::MalformedTree(msg));
    for (id, node) in tree.nodes().iter().enumerate() {
        match (&node.shape, id) {
            (Shape::Square { .. } | Shape::Triangle(_), PackingTree::ROOT) => {}
            (Shape::Square { .. } | Shape::Triangle(_), _) => {
                return malformed(format!("node {id}: container shape below the root"))
            }
            (_, PackingTree::ROOT) => return malformed("root is not a container".into()),
            (Shape::Circle(_), _) if !node.children.is_empty() => {
                return malformed(format!("node {id}: circle with children"))
            }
            _ => {}
        }
        if id != PackingTree::ROOT {
            match node.parent {
                Some(p) if p < tree.len() && tree.node(p).children.contains(&id) => {}
                _ => return malformed(format!("node {id}: broken parent link")),
            }
        }
        for &c in &node.children {
            if c >= tree.len() || tree.node(c).parent != Some(id) {
                return malformed(format!("node {id}: broken child link {c}"));
            }
        }
    }
    Ok(())
}

/// Shadows of two circles on the segment `base = (p, q)`: how far the
/// first reaches from `p` towards `q` and the second from `q` towards `p`.
/// The shadows are disjoint iff the sum is at most `|pq|`.
pub fn projection_widths(c1: &Circle, c2: &Circle, base: (Point, Point)) -> (f64, f64) {
    let (p, q) = base;
    let len = p.distance(q);
    let u = (q - p) * (1.0 / len);
    let w1 = (c1.center - p).dot(u) + c1.radius;
    let w2 = (q - c2.center).dot(u) + c2.radius;
    (w1, w2)
}

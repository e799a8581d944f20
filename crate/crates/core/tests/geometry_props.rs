mod common;

use std::f64::consts::{PI, SQRT_2};

use common::{non_acute, segment_distance};
use proptest::prelude::*;
use splitpack::geometry::{
    convex_polygon_distance, convex_polygon_signed_distance, critical_density, hat_dimensions,
    polygon_signed_distance, triangle_split_key, Container, Hat, Point, Triangle,
};
use splitpack::packer::place_hats_in_square;
use splitpack::splitting::min_guarantee;
use splitpack::tree::PackingTree;
use splitpack::verifier::verify;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Right isosceles hat with legs along the axes and the right angle at
/// the origin, sized to incircle area `a` and rounded to area `b`.
fn axis_hat(a: f64, b: f64) -> Hat {
    let r = (a / PI).sqrt();
    let leg = r * (2.0 + SQRT_2);
    let t = Triangle::new(
        Point::new(0.0, 0.0),
        Point::new(leg, 0.0),
        Point::new(0.0, leg),
    )
    .unwrap();
    Hat::new(t, b).unwrap()
}

fn extent(hat: &Hat, dir: Point) -> f64 {
    let proj: Vec<f64> = hat.core().iter().map(|p| p.dot(dir)).collect();
    let hi = proj.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = proj.iter().cloned().fold(f64::INFINITY, f64::min);
    hi - lo + 2.0 * hat.rounding_radius()
}

proptest! {
    #[test]
    fn hat_dimensions_match_measured_extents(a in 1e-3f64..100.0, frac in 0.0f64..1.0) {
        let b = frac * a;
        let d = hat_dimensions(a, b).unwrap();
        let hat = axis_hat(a, b);
        let along_hyp = Point::new(SQRT_2 / 2.0, -SQRT_2 / 2.0);
        prop_assert!(rel(extent(&hat, along_hyp), d.w) < 1e-12);
        prop_assert!(rel(extent(&hat, Point::new(1.0, 0.0)), d.d) < 1e-12);
        let tip = hat.triangle().vertices()[0];
        let hyp_line = Point::new(SQRT_2 / 2.0, SQRT_2 / 2.0);
        let far = hat.triangle().vertices()[1].dot(hyp_line);
        prop_assert!(rel(far - tip.dot(hyp_line), d.h) < 1e-12);
        let s = (b / PI).sqrt();
        prop_assert!((d.w_corner - d.w - s * SQRT_2).abs() <= 1e-12 * d.w);
    }

    #[test]
    fn corner_width_grows_with_area(a in 1e-3f64..100.0, k in 1.0001f64..4.0) {
        let lo = hat_dimensions(a, 0.0).unwrap().w_corner;
        let hi = hat_dimensions(k * a, 0.0).unwrap().w_corner;
        prop_assert!(hi > lo);
    }

    #[test]
    fn hats_in_square_agree_with_the_corner_conditions(side in 0.1f64..10.0, frac in 0.0f64..0.5) {
        let a = splitpack::geometry::SQUARE_DENSITY * side * side;
        let (a1, a2) = (frac * a, (1.0 - frac) * a);
        let b1 = min_guarantee(a1, a2, a / 2.0, a / 2.0, 0.0);
        let b2 = min_guarantee(a2, a1, a / 2.0, a / 2.0, 0.0);
        let (h1, h2) = place_hats_in_square(side, (a1, b1), (a2, b2)).unwrap();
        let mut tree = PackingTree::new(Container::Square { side });
        let diag = side * SQRT_2;
        let h_sum = if a1 > 0.0 { hat_dimensions(a1, 0.0).unwrap().h } else { 0.0 }
            + hat_dimensions(a2, 0.0).unwrap().h;
        prop_assert!(h_sum <= diag * (1.0 + 1e-12));
        prop_assert!(hat_dimensions(a2, a2 - a1).unwrap().d <= side * (1.0 + 1e-12));
        for h in [h1, h2].into_iter().flatten() {
            let corner = h.triangle().vertices()[0];
            let far = h.triangle().vertices()[1];
            let height = (far - corner).dot(Point::new(SQRT_2 / 2.0, SQRT_2 / 2.0)).abs();
            prop_assert!(rel(height, hat_dimensions(h.incircle_area(), 0.0).unwrap().h) < 1e-12);
            tree.add_hat(PackingTree::ROOT, h);
        }
        let report = verify(&tree, 1e-9 * diag).unwrap();
        prop_assert!(report.passed, "worst slack {}", report.worst_slack);
    }

    #[test]
    fn split_key_covers_the_incircle(u in 0.01f64..0.99, v in 0.01f64..1.0, scale in 0.1f64..10.0) {
        let t = non_acute(u, v, scale);
        let key = triangle_split_key(&t);
        prop_assert!(key.f1 + key.f2 >= t.incircle_area() * (1.0 - 1e-12));
    }

    #[test]
    fn density_formula_matches_incircle_ratio(u in 0.01f64..0.99, v in 0.01f64..1.0, scale in 0.1f64..10.0) {
        let t = non_acute(u, v, scale);
        let phi = critical_density(&Container::Triangle(t)).unwrap();
        prop_assert!(rel(phi, t.incircle_area() / t.area()) < 1e-12);
    }

    #[test]
    fn polygon_distance_matches_brute_force(
        pts in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 6),
        dx in -8.0f64..8.0,
    ) {
        let tri = |s: &[(f64, f64)], off: f64| {
            Triangle::new(
                Point::new(s[0].0 + off, s[0].1),
                Point::new(s[1].0 + off, s[1].1),
                Point::new(s[2].0 + off, s[2].1),
            )
        };
        let (Ok(ta), Ok(tb)) = (tri(&pts[..3], 0.0), tri(&pts[3..], dx)) else {
            return Ok(());
        };
        let (va, vb) = (ta.vertices(), tb.vertices());
        let nested = va.iter().any(|&p| polygon_signed_distance(p, &vb) >= 0.0)
            || vb.iter().any(|&p| polygon_signed_distance(p, &va) >= 0.0);
        let mut oracle = f64::INFINITY;
        for i in 0..3 {
            for j in 0..3 {
                let d = segment_distance(va[i], va[(i + 1) % 3], vb[j], vb[(j + 1) % 3]);
                oracle = oracle.min(d);
            }
        }
        if nested {
            oracle = 0.0;
        }
        let got = convex_polygon_distance(&va, &vb);
        prop_assert!((got - oracle).abs() <= 1e-9, "got {got}, oracle {oracle}");
        let signed = convex_polygon_signed_distance(&va, &vb);
        if oracle > 0.0 {
            prop_assert!((signed - oracle).abs() <= 1e-9);
        } else {
            prop_assert!(signed <= 0.0);
        }
    }
}

#[test]
fn density_of_three_four_five() {
    let t = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
    let phi = critical_density(&Container::Triangle(t)).unwrap();
    assert!(rel(phi, PI / 6.0) < 1e-12);
}

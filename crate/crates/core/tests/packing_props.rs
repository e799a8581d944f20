mod common;

use common::{areas_from_weights, non_acute};
use proptest::prelude::*;
use splitpack::geometry::{Container, Point, Triangle, SQUARE_DENSITY};
use splitpack::packer::{min_container, pack, pack_with_stats, PackRequest};
use splitpack::splitting::CircleSet;
use splitpack::tree::{PackingTree, Shape};
use splitpack::verifier::{default_tolerance, verify_with_input};

fn weights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, 1..60)
}

fn assert_valid(tree: &PackingTree, areas: &[f64]) -> Result<(), TestCaseError> {
    let report = verify_with_input(tree, areas, default_tolerance(tree)).unwrap();
    prop_assert!(report.passed, "worst slack {}", report.worst_slack);
    Ok(())
}

fn centers_by_index(tree: &PackingTree) -> Vec<Point> {
    let mut v: Vec<(usize, Point)> = tree
        .circles()
        .map(|(_, c, o)| (o.unwrap().index, c.center))
        .collect();
    v.sort_by_key(|p| p.0);
    v.into_iter().map(|p| p.1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_packings_verify(w in weights(), fill in 0.01f64..=1.0, side in 0.1f64..20.0) {
        let areas = areas_from_weights(&w, fill * SQUARE_DENSITY * side * side);
        let req = PackRequest::new(Container::Square { side }, &areas).unwrap();
        let (tree, stats) = pack_with_stats(&req).unwrap();
        assert_valid(&tree, &areas)?;
        let n = areas.len();
        prop_assert_eq!(tree.circle_count(), n);
        prop_assert!(tree.hat_count() <= 2 * n - 2);
        prop_assert!(stats.element_moves <= n * (n + 1) / 2);
    }

    #[test]
    fn triangle_packings_verify(
        w in weights(),
        fill in 0.01f64..=1.0,
        u in 0.02f64..0.98,
        v in 0.05f64..=1.0,
        scale in 0.1f64..20.0,
    ) {
        let t = non_acute(u, v, scale);
        let areas = areas_from_weights(&w, fill * t.incircle_area());
        let req = PackRequest::new(Container::Triangle(t), &areas).unwrap();
        let tree = pack(&req).unwrap();
        assert_valid(&tree, &areas)?;
    }

    #[test]
    fn min_size_packings_verify(w in weights(), side in 0.5f64..5.0) {
        let areas = areas_from_weights(&w, SQUARE_DENSITY * side * side);
        let b = areas.iter().cloned().fold(f64::INFINITY, f64::min);
        let req = PackRequest::new(Container::Square { side }, &areas).unwrap().with_min_size(b);
        let tree = pack(&req).unwrap();
        assert_valid(&tree, &areas)?;
        for (_, h) in tree.hats() {
            prop_assert!(h.rounding_area() >= b * (1.0 - 1e-9));
        }
    }

    #[test]
    fn packing_scales_with_the_container(w in weights(), k in 0.1f64..10.0) {
        let areas = areas_from_weights(&w, SQUARE_DENSITY);
        let scaled: Vec<f64> = areas.iter().map(|a| a * k * k).collect();
        let base = pack(&PackRequest::new(Container::Square { side: 1.0 }, &areas).unwrap()).unwrap();
        let big = pack(&PackRequest::new(Container::Square { side: k }, &scaled).unwrap()).unwrap();
        for (p, q) in centers_by_index(&base).into_iter().zip(centers_by_index(&big)) {
            prop_assert!((p * k).distance(q) <= 1e-9 * k);
        }
    }

    #[test]
    fn min_container_is_tight(w in weights(), total in 0.01f64..100.0, u in 0.02f64..0.98, v in 0.05f64..=1.0) {
        let areas = areas_from_weights(&w, total);
        let set = CircleSet::new(&areas).unwrap();
        for family in [Container::Square { side: 1.0 }, Container::Triangle(non_acute(u, v, 1.0))] {
            let c = min_container(&set, &family).unwrap();
            let critical = c.critical_area().unwrap();
            prop_assert!((critical - set.combined()).abs() <= 1e-12 * critical);
            let tree = pack(&PackRequest::new(c, &areas).unwrap()).unwrap();
            assert_valid(&tree, &areas)?;
        }
    }
}

#[test]
fn equal_powers_of_two_halve_every_hat() {
    for k in 1..=6 {
        let n = 1usize << k;
        let areas = vec![SQUARE_DENSITY / n as f64; n];
        let tree =
            pack(&PackRequest::new(Container::Square { side: 1.0 }, &areas).unwrap()).unwrap();
        for (id, hat) in tree.hats() {
            let parent_area = match &tree.node(tree.node(id).parent.unwrap()).shape {
                Shape::Square { side } => side * side,
                Shape::Hat(h) => h.triangle().area(),
                other => panic!("unexpected parent {other:?}"),
            };
            let ratio = hat.triangle().area() / parent_area;
            assert!((ratio - 0.5).abs() < 1e-9, "n = {n}, ratio {ratio}");
        }
        assert_eq!(tree.hat_count(), 2 * n - 2);
    }
}

#[test]
fn right_and_obtuse_single_incircle() {
    for t in [
        Triangle::from_sides(3.0, 4.0, 5.0).unwrap(),
        Triangle::from_sides(2.0, 3.0, 4.5).unwrap(),
    ] {
        let areas = [t.incircle_area()];
        let tree = pack(&PackRequest::new(Container::Triangle(t), &areas).unwrap()).unwrap();
        let report = verify_with_input(&tree, &areas, default_tolerance(&tree)).unwrap();
        assert!(report.passed && report.worst_slack.abs() < 1e-9);
    }
}

use proptest::prelude::*;
use splitpack_cli::docs::{ContainerSpec, InstanceDocument, PackingDocument};
use splitpack_cli::{cmd_pack, cmd_verify};

proptest! {
    #[test]
    fn instance_round_trip(areas in prop::collection::vec(1e-9f64..1e3, 0..20), side in 1e-3f64..1e3) {
        let doc = InstanceDocument::from_areas(ContainerSpec::Square { side }, &areas);
        let text = serde_json::to_string(&doc).unwrap();
        let back: InstanceDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn packing_round_trip_is_exact_and_verifies(
        w in prop::collection::vec(0.01f64..1.0, 1..40),
        x in 2.0f64..6.0,
        y in 2.0f64..6.0,
    ) {
        let z = (x * x + y * y).sqrt() * 1.05;
        let spec = ContainerSpec::parse(&format!("triangle:{x},{y},{z}")).unwrap();
        let incircle = spec.to_container().unwrap().critical_area().unwrap();
        let sum: f64 = w.iter().sum();
        let areas: Vec<f64> = w.iter().map(|v| v / sum * incircle).collect();
        let doc = cmd_pack(&InstanceDocument::from_areas(spec, &areas)).unwrap();
        let back: PackingDocument = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        prop_assert_eq!(&back, &doc);
        let report = cmd_verify(&back, None, Some(&areas)).unwrap();
        prop_assert!(report.passed);
    }
}

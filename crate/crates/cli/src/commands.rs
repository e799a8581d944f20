use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use splitpack::geometry::{critical_density, Container};
use splitpack::packer::{min_container, pack, PackRequest};
use splitpack::splitting::CircleSet;
use splitpack::verifier::{default_tolerance, verify, verify_with_input, VerificationReport};
use splitpack::Error;

use crate::docs::{ContainerSpec, InstanceDocument, PackingDocument};
use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecideReport {
    pub packable: Verdict,
    /// Combined area over critical area.
    pub ratio: f64,
    pub combined_area: f64,
    pub critical_area: f64,
}

/// Sufficient test for packability: yes when the combined area is at most
/// the critical area and every circle respects the minimum size, unknown
/// otherwise.
pub fn cmd_decide(instance: &InstanceDocument) -> CliResult<DecideReport> {
    let container = instance.container.to_container()?;
    let areas = instance.areas()?;
    let req = request(container, &areas, instance.min_size)?;
    let critical = container.critical_area()?;
    let combined = req.circles.combined();
    let packable = match req.validate() {
        Ok(_) => Verdict::Yes,
        Err(Error::OverCapacity { .. } | Error::MinSizeViolation { .. }) => Verdict::Unknown,
        Err(e) => return Err(e.into()),
    };
    Ok(DecideReport {
        packable,
        ratio: combined / critical,
        combined_area: combined,
        critical_area: critical,
    })
}

fn request(container: Container, areas: &[f64], min_size: Option<f64>) -> CliResult<PackRequest> {
    let req = PackRequest::new(container, areas)?;
    Ok(match min_size {
        Some(b) => req.with_min_size(b),
        None => req,
    })
}

pub fn cmd_pack(instance: &InstanceDocument) -> CliResult<PackingDocument> {
    let container = instance.container.to_container()?;
    let areas = instance.areas()?;
    let tree = pack(&request(container, &areas, instance.min_size)?)?;
    PackingDocument::from_tree(&tree)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub container: ContainerSpec,
    pub container_area: f64,
    /// Combined circle area, a lower bound on any container's area.
    pub lower_bound: f64,
    /// Container area over the lower bound.
    pub ratio: f64,
    pub packing: PackingDocument,
}

/// Smallest container of the instance's shape whose critical area holds
/// the circles, with its packing. The instance container's size is
/// ignored.
pub fn cmd_approx(instance: &InstanceDocument) -> CliResult<ApproxReport> {
    let family = instance.container.to_container()?;
    let areas = instance.areas()?;
    let set = CircleSet::new(&areas)?;
    let container = min_container(&set, &family)?;
    let tree = pack(&PackRequest::new(container, &areas)?)?;
    Ok(ApproxReport {
        container: ContainerSpec::from_container(&container),
        container_area: container.area(),
        lower_bound: set.combined(),
        ratio: container.area() / set.combined(),
        packing: PackingDocument::from_tree(&tree)?,
    })
}

/// Verifies a packing document. With `input`, the placed circles must also
/// match the input areas. Returns the report; callers map a failed report
/// to exit code 1.
pub fn cmd_verify(
    doc: &PackingDocument,
    tolerance: Option<f64>,
    input: Option<&[f64]>,
) -> CliResult<VerificationReport> {
    let tree = doc.to_tree()?;
    let tol = tolerance.unwrap_or_else(|| default_tolerance(&tree));
    let report = match input {
        Some(areas) => verify_with_input(&tree, areas, tol)?,
        None => verify(&tree, tol)?,
    };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// All circles the same size.
    Equal,
    /// Sizes decay by a random factor in `[0.5, 0.95)`.
    Geometric,
    /// Sizes uniform in `[0.05, 1)` before scaling.
    Uniform,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub target_ratio: f64,
    pub seed: u64,
    pub distribution: Distribution,
    pub container: ContainerSpec,
}

/// Random instance whose combined area is `target_ratio` times the
/// container's critical area. Deterministic in the seed.
pub fn cmd_gen(p: &GenParams) -> CliResult<InstanceDocument> {
    if p.n == 0 {
        return Err(CliError::Invalid("need at least one circle".into()));
    }
    if !(p.target_ratio > 0.0 && p.target_ratio <= 1.0) {
        return Err(CliError::Invalid(format!(
            "target ratio must lie in (0, 1], got {}",
            p.target_ratio
        )));
    }
    let container = p.container.to_container()?;
    let critical = critical_density(&container)? * container.area();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let weights: Vec<f64> = match p.distribution {
        Distribution::Equal => vec![1.0; p.n],
        Distribution::Geometric => {
            let q: f64 = rng.random_range(0.5..0.95);
            (0..p.n)
                .map(|i| q.powi(i as i32).max(f64::MIN_POSITIVE))
                .collect()
        }
        Distribution::Uniform => (0..p.n).map(|_| rng.random_range(0.05..1.0)).collect(),
    };
    let total: f64 = weights.iter().sum();
    let target = p.target_ratio * critical;
    let areas: Vec<f64> = weights.iter().map(|w| w / total * target).collect();
    Ok(InstanceDocument::from_areas(p.container.clone(), &areas))
}

#[cfg(test)]
mod tests {
    use splitpack::geometry::SQUARE_DENSITY;

    use super::*;

    fn unit_square(areas: &[f64]) -> InstanceDocument {
        InstanceDocument::from_areas(ContainerSpec::Square { side: 1.0 }, areas)
    }

    #[test]
    fn decide_examples() {
        assert_eq!(
            cmd_decide(&unit_square(&[0.539])).unwrap().packable,
            Verdict::Yes
        );
        let over = cmd_decide(&unit_square(&[0.28, 0.28])).unwrap();
        assert_eq!(over.packable, Verdict::Unknown);
        assert!((over.ratio - 0.56 / SQUARE_DENSITY).abs() < 1e-12);
        assert_eq!(
            cmd_decide(&unit_square(&[])).unwrap().packable,
            Verdict::Yes
        );
        let mut small = unit_square(&[0.1, 0.01]);
        small.min_size = Some(0.05);
        assert_eq!(cmd_decide(&small).unwrap().packable, Verdict::Unknown);
    }

    #[test]
    fn decide_rejects_acute_containers() {
        let doc =
            InstanceDocument::from_areas(ContainerSpec::parse("triangle:1,1,1").unwrap(), &[0.01]);
        assert!(matches!(cmd_decide(&doc), Err(CliError::Unsupported(_))));
    }

    #[test]
    fn pack_over_capacity_is_invalid() {
        let err = cmd_pack(&unit_square(&[0.28, 0.28])).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("over capacity"));
    }

    #[test]
    fn pack_then_verify_round_trip() {
        let doc = cmd_pack(&unit_square(&[0.2, 0.15, 0.1, 0.05, 0.02])).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let back: PackingDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let report = cmd_verify(&back, None, Some(&[0.2, 0.15, 0.1, 0.05, 0.02])).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn approx_examples() {
        let one = InstanceDocument::from_areas(
            ContainerSpec::Square { side: 1.0 },
            &[std::f64::consts::PI],
        );
        let r = cmd_approx(&one).unwrap();
        let ContainerSpec::Square { side } = r.container else {
            panic!()
        };
        assert!((side - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!((r.ratio - 1.0 / SQUARE_DENSITY).abs() < 1e-12);
        let tri =
            InstanceDocument::from_areas(ContainerSpec::parse("triangle:3,4,5").unwrap(), &[1.0]);
        let r = cmd_approx(&tri).unwrap();
        assert!((r.ratio - 6.0 / std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn gen_is_deterministic_and_hits_the_target() {
        let p = GenParams {
            n: 30,
            target_ratio: 0.7,
            seed: 42,
            distribution: Distribution::Uniform,
            container: ContainerSpec::Square { side: 2.0 },
        };
        let a = serde_json::to_string(&cmd_gen(&p).unwrap()).unwrap();
        let b = serde_json::to_string(&cmd_gen(&p).unwrap()).unwrap();
        assert_eq!(a, b);
        let doc = cmd_gen(&p).unwrap();
        let sum: f64 = doc.areas().unwrap().iter().sum();
        assert!((sum - 0.7 * SQUARE_DENSITY * 4.0).abs() < 1e-12);
        let twin = cmd_gen(&GenParams {
            n: 2,
            target_ratio: 1.0,
            distribution: Distribution::Equal,
            container: ContainerSpec::Square { side: 1.0 },
            ..p
        })
        .unwrap();
        let areas = twin.areas().unwrap();
        assert_eq!(areas[0], areas[1]);
        assert!((areas[0] - SQUARE_DENSITY / 2.0).abs() < 1e-15);
        assert!(cmd_gen(&GenParams { n: 0, ..p.clone() }).is_err());
        assert!(cmd_gen(&GenParams {
            target_ratio: 1.5,
            ..p
        })
        .is_err());
    }
}

//! JSON documents read and written by the CLI.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use splitpack::geometry::{critical_density, Circle, Container, Hat, Point, Triangle};
use splitpack::tree::{NodeId, Origin, PackingTree, Shape};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ContainerSpec {
    Square {
        side: f64,
    },
    Triangle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sides: Option<[f64; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<[[f64; 2]; 3]>,
    },
}

impl ContainerSpec {
    /// Parses `square:SIDE` or `triangle:X,Y,Z`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| CliError::Invalid(format!("container `{text}` lacks a `:`")))?;
        let nums = args
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Invalid(format!("container `{text}`: {e}")))?;
        match (kind.trim(), nums.as_slice()) {
            ("square", [side]) => Ok(ContainerSpec::Square { side: *side }),
            ("triangle", [x, y, z]) => Ok(ContainerSpec::Triangle {
                sides: Some([*x, *y, *z]),
                vertices: None,
            }),
            _ => Err(CliError::Invalid(format!(
                "container `{text}` is neither square:SIDE nor triangle:X,Y,Z"
            ))),
        }
    }

    pub fn to_container(&self) -> CliResult<Container> {
        match self {
            ContainerSpec::Square { side } => {
                if !(*side > 0.0 && side.is_finite()) {
                    return Err(CliError::Invalid(format!(
                        "square side must be positive, got {side}"
                    )));
                }
                Ok(Container::Square { side: *side })
            }
            ContainerSpec::Triangle {
                sides: Some([x, y, z]),
                vertices: None,
            } => Ok(Container::Triangle(Triangle::from_sides(*x, *y, *z)?)),
            ContainerSpec::Triangle {
                sides: None,
                vertices: Some(v),
            } => Ok(Container::Triangle(triangle_from(v)?)),
            ContainerSpec::Triangle { .. } => Err(CliError::Invalid(
                "a triangle needs exactly one of `sides` and `vertices`".into(),
            )),
        }
    }

    /// Echo of a resolved container; triangles are written by vertices.
    pub fn from_container(c: &Container) -> Self {
        match c {
            Container::Square { side } => ContainerSpec::Square { side: *side },
            Container::Triangle(t) => ContainerSpec::Triangle {
                sides: None,
                vertices: Some(coords(t)),
            },
        }
    }
}

fn triangle_from(v: &[[f64; 2]; 3]) -> CliResult<Triangle> {
    let p = |i: usize| Point::new(v[i][0], v[i][1]);
    Ok(Triangle::new(p(0), p(1), p(2))?)
}

fn coords(t: &Triangle) -> [[f64; 2]; 3] {
    t.vertices().map(|p| [p.x, p.y])
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

impl CircleSpec {
    pub fn area(&self, index: usize) -> CliResult<f64> {
        let area = match (self.area, self.radius) {
            (Some(a), None) => a,
            (None, Some(r)) if r > 0.0 => PI * r * r,
            (None, Some(r)) => r,
            _ => {
                return Err(CliError::Invalid(format!(
                    "circle {index} needs exactly one of `area` and `radius`"
                )))
            }
        };
        if !(area > 0.0 && area.is_finite()) {
            return Err(CliError::Invalid(format!(
                "circle {index} has non-positive size"
            )));
        }
        Ok(area)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub container: ContainerSpec,
    pub circles: Vec<CircleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_size: Option<f64>,
}

impl InstanceDocument {
    pub fn from_areas(container: ContainerSpec, areas: &[f64]) -> Self {
        Self {
            container,
            circles: areas
                .iter()
                .map(|&a| CircleSpec {
                    area: Some(a),
                    radius: None,
                })
                .collect(),
            min_size: None,
        }
    }

    pub fn areas(&self) -> CliResult<Vec<f64>> {
        self.circles
            .iter()
            .enumerate()
            .map(|(i, c)| c.area(i))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub x: f64,
    pub y: f64,
    pub radius: f64,
    pub input_index: usize,
    /// Index into `subcontainers`; absent for circles directly in the
    /// container.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subcontainer {
    pub vertices: [[f64; 2]; 3],
    pub rounding_radius: f64,
    pub depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingDocument {
    pub container: ContainerSpec,
    pub placements: Vec<Placement>,
    #[serde(default)]
    pub subcontainers: Vec<Subcontainer>,
    pub density_used: f64,
    pub critical_density: f64,
}

impl PackingDocument {
    pub fn from_tree(tree: &PackingTree) -> CliResult<Self> {
        let container = tree.container();
        let mut slot: HashMap<NodeId, usize> = HashMap::new();
        let mut subcontainers = Vec::new();
        for (id, hat) in tree.hats() {
            let node = tree.node(id);
            slot.insert(id, subcontainers.len());
            subcontainers.push(Subcontainer {
                vertices: coords(hat.triangle()),
                rounding_radius: hat.rounding_radius(),
                depth: node.depth,
                parent: node.parent.and_then(|p| slot.get(&p).copied()),
            });
        }
        let mut placements: Vec<Placement> = tree
            .circles()
            .map(|(id, c, origin)| Placement {
                x: c.center.x,
                y: c.center.y,
                radius: c.radius,
                input_index: origin.map_or(usize::MAX, |o| o.index),
                parent: tree.node(id).parent.and_then(|p| slot.get(&p).copied()),
            })
            .collect();
        placements.sort_by_key(|p| p.input_index);
        let used: f64 = placements.iter().map(|p| PI * p.radius * p.radius).sum();
        Ok(Self {
            container: ContainerSpec::from_container(&container),
            placements,
            subcontainers,
            density_used: used / container.area(),
            critical_density: critical_density(&container)?,
        })
    }

    /// Rebuilds the packing tree. Subcontainers must come after their
    /// parents; without subcontainers the circles hang off the container.
    pub fn to_tree(&self) -> CliResult<PackingTree> {
        let malformed = |msg: String| CliError::Invalid(format!("malformed packing: {msg}"));
        let mut tree = PackingTree::new(self.container.to_container()?);
        let mut ids = Vec::with_capacity(self.subcontainers.len());
        for (i, s) in self.subcontainers.iter().enumerate() {
            let parent = match s.parent {
                None => PackingTree::ROOT,
                Some(p) if p < i => ids[p],
                Some(p) => return Err(malformed(format!("subcontainer {i} has parent {p}"))),
            };
            let hat = Hat::with_radius(triangle_from(&s.vertices)?, s.rounding_radius)?;
            ids.push(tree.add_child(parent, Shape::Hat(hat), None));
        }
        let mut seen = vec![false; self.placements.len()];
        for (k, p) in self.placements.iter().enumerate() {
            if p.input_index >= seen.len() || std::mem::replace(&mut seen[p.input_index], true) {
                return Err(malformed(format!(
                    "placement {k}: input indices are not a permutation"
                )));
            }
            let parent = match p.parent {
                None => PackingTree::ROOT,
                Some(s) if s < ids.len() => ids[s],
                Some(s) => return Err(malformed(format!("placement {k} has parent {s}"))),
            };
            let circle = Circle::new(Point::new(p.x, p.y), p.radius)?;
            let origin = Origin {
                index: p.input_index,
                area: circle.area(),
            };
            tree.add_circle(parent, circle, origin);
        }
        Ok(tree)
    }
}

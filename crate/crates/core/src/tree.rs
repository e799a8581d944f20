//! Arena-backed packing tree.
//!
//! Node 0 is the container. Every split adds two hat nodes under the
//! current node; a group with a single circle ends in a circle leaf. The
//! recursion can be as deep as the number of circles, so nodes live in a
//! flat vector and refer to each other by index.

use crate::geometry::{Circle, Container, Hat, Triangle};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// The square `[0, side]²`.
    Square {
        side: f64,
    },
    Triangle(Triangle),
    Hat(Hat),
    Circle(Circle),
}

impl From<Container> for Shape {
    fn from(c: Container) -> Self {
        match c {
            Container::Square { side } => Shape::Square { side },
            Container::Triangle(t) => Shape::Triangle(t),
        }
    }
}

/// Input circle a leaf stands for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Origin {
    pub index: usize,
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingNode {
    pub shape: Shape,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
    pub depth: usize,
    /// Set on circle leaves.
    pub origin: Option<Origin>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingTree {
    container: Container,
    nodes: Vec<PackingNode>,
}

impl PackingTree {
    pub const ROOT: NodeId = 0;

    pub fn new(container: Container) -> Self {
        Self {
            container,
            nodes: vec![PackingNode {
                shape: container.into(),
                children: Vec::new(),
                parent: None,
                depth: 0,
                origin: None,
            }],
        }
    }

    pub fn container(&self) -> Container {
        self.container
    }

    /// Appends a node under `parent`.
    ///
    /// # Panics
    /// If `parent` is not a node of this tree.
    pub fn add_child(&mut self, parent: NodeId, shape: Shape, origin: Option<Origin>) -> NodeId {
        let id = self.nodes.len();
        let depth = self.nodes[parent].depth + 1;
        self.nodes[parent].children.push(id);
        self.nodes.push(PackingNode {
            shape,
            children: Vec::new(),
            parent: Some(parent),
            depth,
            origin,
        });
        id
    }

    pub fn add_hat(&mut self, parent: NodeId, hat: Hat) -> NodeId {
        self.add_child(parent, Shape::Hat(hat), None)
    }

    pub fn add_circle(&mut self, parent: NodeId, circle: Circle, origin: Origin) -> NodeId {
        self.add_child(parent, Shape::Circle(circle), Some(origin))
    }

    pub fn root(&self) -> &PackingNode {
        &self.nodes[Self::ROOT]
    }

    pub fn node(&self, id: NodeId) -> &PackingNode {
        &self.nodes[id]
    }

    pub fn node_mut(&mut self, id: NodeId) -> &mut PackingNode {
        &mut self.nodes[id]
    }

    pub fn nodes(&self) -> &[PackingNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn circles(&self) -> impl Iterator<Item = (NodeId, &Circle, Option<Origin>)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(id, n)| match &n.shape {
                Shape::Circle(c) => Some((id, c, n.origin)),
                _ => None,
            })
    }

    pub fn hats(&self) -> impl Iterator<Item = (NodeId, &Hat)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(id, n)| match &n.shape {
                Shape::Hat(h) => Some((id, h)),
                _ => None,
            })
    }

    pub fn circle_count(&self) -> usize {
        self.circles().count()
    }

    pub fn hat_count(&self) -> usize {
        self.hats().count()
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }
}

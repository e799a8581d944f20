//! Split Packing: worst-case optimal circle packing.
//!
//! Any set of circles whose combined area is at most `π/(3+2√2)` of a
//! square's area can be packed into that square, and any set whose combined
//! area does not exceed the incircle of a right or obtuse triangle can be
//! packed into the triangle. The packer proves this constructively: it
//! splits the circle set greedily into two groups, places two rounded
//! right-triangle subcontainers ("hats") for them, and recurses.
//!
//! - [`geometry`]: points, triangles, hats, closed-form hat measures,
//!   critical densities and convex distance primitives.
//! - [`splitting`]: greedy and weighted greedy two-way partitioning.
//! - [`tree`]: the arena-backed packing tree.
//! - [`packer`]: the recursive placement itself.
//! - [`verifier`]: an independent containment and overlap checker.
//!
//! ```
//! use splitpack::geometry::{Container, SQUARE_DENSITY};
//! use splitpack::packer::{pack, PackRequest};
//! use splitpack::verifier::{default_tolerance, verify};
//!
//! let areas = [0.2, 0.15, 0.1, 0.05];
//! assert!(areas.iter().sum::<f64>() <= SQUARE_DENSITY);
//! let request = PackRequest::new(Container::Square { side: 1.0 }, &areas).unwrap();
//! let tree = pack(&request).unwrap();
//! let report = verify(&tree, default_tolerance(&tree)).unwrap();
//! assert!(report.passed);
//! ```

// Negated comparisons are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod packer;
pub mod splitting;
pub mod tree;
pub mod verifier;

pub use error::{Error, Result};

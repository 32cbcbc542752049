//! Exact-arithmetic toolkit for the causal structure of the two-dimensional
//! Minkowski plane and the topologies generated from its order relations.

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod geometry;
pub mod regions;
pub mod relations;
pub mod sampling;

pub use catalog::{ConstructionKind, Family, FamilyParam, TopologyId};
pub use error::{Error, Result};
pub use geometry::{AffineMap, CausalClass, Point, Scalar};
pub use regions::Region;
pub use relations::RelationId;

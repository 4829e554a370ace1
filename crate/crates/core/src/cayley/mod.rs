//! Finite balls of the Cayley graph, relation enumeration, and cycle bases.

mod ball;
mod basis;
mod relations;

use thiserror::Error;

pub use ball::{CayleyBall, Edge, EdgeId, VertexId, DEFAULT_VERTEX_CAP};
pub use basis::{cycle_basis, express_in_basis, CycleBasis};
pub use relations::{
    enumerate_relations, enumerate_relations_with_cap, EnumerationMode, RelationSet, DEFAULT_WALK_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("ball exceeds {cap} vertices at radius {radius}")]
    BallTooLarge { cap: usize, radius: usize },
    #[error("relation enumeration exceeded {cap} walk steps")]
    WalkBudget { cap: u64 },
}

/// Builds `B_S(radius)`.
pub fn build_ball(
    p: &crate::presentation::Presentation,
    oracle: &crate::presentation::Oracle,
    radius: usize,
) -> Result<CayleyBall, CayleyError> {
    CayleyBall::build(p, oracle, radius)
}

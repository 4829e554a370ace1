//! Fox calculus on Cayley balls: chains, `theta`, relation cycles, the
//! boundary maps, and the low-degree bar-complex comparison maps.
//!
//! A slot `g e_s` of `Z[G]^S` is identified with the edge `g -> gs`, so the
//! map `eta` sending `e_s` to the edge `[s]` is the identity on
//! [`GroupRingVec`] and relation cycles are stored in the same type.

mod bar;
mod chains;
mod fox;

use thiserror::Error;

pub use bar::{bar_boundary2, bar_coboundary, chi1, chi2, edge_pair_value, psi2, BarTerm};
pub use chains::{EdgeCochain, FillCertificate, GroupRingScalar, GroupRingVec, VertexFunction};
pub use fox::{ball_cells, boundary1, boundary2, cell_boundary, cycle_of_relation, eta, fox_theta};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("a prefix of the word leaves the ball")]
    PrefixEscapesBall,
    #[error("`{0}` is not a relation")]
    NotARelation(String),
    #[error("walk from vertex {base} leaves the ball")]
    WalkEscapesBall { base: usize },
    #[error("edge from vertex {vertex} labelled {gen} leaves the ball")]
    TargetEscapesBall { vertex: usize, gen: usize },
    #[error("translate of vertex {vertex} by {base} leaves the ball")]
    TranslateEscapesBall { base: usize, vertex: usize },
    #[error("cell {relator} at vertex {vertex} leaves the ball")]
    CellEscapesBall { vertex: usize, relator: usize },
    #[error("pair ({g}, {h}) is not evaluable from edge data")]
    UnevaluablePair { g: usize, h: usize },
    #[error("relator {0} is empty or missing")]
    EmptyRelator(usize),
    #[error("malformed chain JSON: {0}")]
    Json(String),
}

//! Filling norms on Cayley balls and the growth functions built from them.
//!
//! Every fill is an ℓ1 problem over the 2-cells of the ball. Before solving,
//! cells that are forced to zero (the only live cell on an edge the target
//! does not touch) are collapsed away; cochains produced on the smaller
//! problem are then extended back across the collapsed cells, so dual
//! witnesses and separating cochains are always checked on the full ball.

mod context;
mod decompose;
mod fill;
mod growth;

use thiserror::Error;

pub use context::FillContext;
pub use decompose::{decompose_cycle, CyclePiece};
pub use fill::{
    dual_norm_check, fill_int, fill_int_in, fill_real, fill_real_in, stable_fill, DualCheck, FillReport, StableRow,
};
pub use growth::{cof, dehn_ab, growth_table, GrowthKind, GrowthOptions, GrowthRow, GrowthTable};

use crate::cayley::CayleyError;
use crate::foxcalc::{ChainError, EdgeCochain};
use crate::ratlp::LpError;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FillError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error("the chain is not a cycle")]
    NotACycle,
    #[error("the target leaves the ball of radius {radius}")]
    EscapesBall { radius: usize },
    /// No chain in the ball fills the target. The witness vanishes on every
    /// cell boundary and pairs positively with the target.
    #[error("not a boundary inside the ball (separating cochain pairs to {pairing})")]
    NotABoundary { witness: EdgeCochain, pairing: Rational },
    #[error("no integral filling inside the ball")]
    NoIntegralFilling,
    #[error("budget of {nodes} exhausted (lower bound {lower}, best {best:?})")]
    Budget {
        nodes: u64,
        lower: Rational,
        best: Option<Box<Rational>>,
    },
    #[error("cycle trace left the ball")]
    TraceEscapesBall,
    #[error("internal check failed: {0}")]
    Verification(String),
}

//! Bounded primitives of 2-cocycles on Cayley balls and on finite complexes.
//!
//! A 2-cocycle is stored through its edge data `alpha_0`; the group-level
//! question "is there a primitive bounded by `F`" becomes a system of
//! difference constraints on a vertex function `m`.

mod cocycle;
mod complex;
mod edge_bounds;

use thiserror::Error;

pub(crate) use cocycle::parse_bound_value;
pub use cocycle::{cocycle_norm, BoundFunction, CocycleData, CocycleNorm};
pub use complex::{cochain_from_json, complex_primitive, random_exact_cochain, ComplexOutcome, FiniteComplex};
pub use edge_bounds::{
    bound_along, check_condition_ii, check_thm4_equivalence, find_primitive, primitive_problem, random_instance,
    relator_constant, satisfies_condition_i, violating_cycle, ConditionIiReport, PrimitiveOutcome, Thm4Report,
    Violation,
};

use crate::cayley::CayleyError;
use crate::filling::FillError;
use crate::foxcalc::ChainError;
use crate::ratlp::LpError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimitiveError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Fill(#[from] FillError),
    #[error("the cochain is not a coboundary (dt = u has no solution)")]
    NotExact,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bound at index {0} is negative")]
    NegativeBound(usize),
    #[error("boundary maps d{} d{q} do not compose to zero", q - 1)]
    BoundaryNotZero { q: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("internal check failed: {0}")]
    Verification(String),
}

#[cfg(test)]
mod tests;

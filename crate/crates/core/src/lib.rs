//! Filling and cofilling invariants of finitely presented groups.
//!
//! Group elements live on finite balls of the Cayley graph ([`cayley`]); chains
//! and the Fox-calculus maps between them live in [`foxcalc`]; every
//! existence question is answered by exact rational linear programming
//! ([`ratlp`]), which yields either a witness or a Farkas certificate.
//! [`filling`] computes filling norms and growth tables, and [`primitive`]
//! decides when a 2-cocycle has a primitive under pointwise bounds.

pub mod cayley;
pub mod filling;
pub mod foxcalc;
pub mod presentation;
pub mod primitive;
mod rational;
pub mod ratlp;

pub use rational::{parse_rational, rational_string, Rational};

use thiserror::Error;

/// Top-level error for callers that mix modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Presentation(#[from] presentation::PresentationError),
    #[error(transparent)]
    Cayley(#[from] cayley::CayleyError),
    #[error(transparent)]
    Chain(#[from] foxcalc::ChainError),
    #[error(transparent)]
    Lp(#[from] ratlp::LpError),
    #[error(transparent)]
    Fill(#[from] filling::FillError),
    #[error(transparent)]
    Primitive(#[from] primitive::PrimitiveError),
}

impl Error {
    /// Whether the failure is a resource cap rather than a mathematical answer.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::Cayley(cayley::CayleyError::BallTooLarge { .. })
                | Error::Cayley(cayley::CayleyError::WalkBudget { .. })
                | Error::Fill(filling::FillError::Budget { .. })
        )
    }
}
